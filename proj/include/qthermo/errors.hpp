#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

// Bad inputs, detected before any numerics run (CLI exit code 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The computation itself cannot proceed or converge (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BlochOutOfBall : ValidationError {
    using ValidationError::ValidationError;
};

struct ParameterOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

struct ScheduleOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

struct IoError : ValidationError {
    using ValidationError::ValidationError;
};

struct InfiniteRelativeEntropy : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularMap : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularRate : NumericalError {
    using NumericalError::NumericalError;
};

struct GridTooCoarse : NumericalError {
    using NumericalError::NumericalError;
};

struct PureStateSingularity : NumericalError {
    using NumericalError::NumericalError;
};

struct IntegrandDivergence : NumericalError {
    using NumericalError::NumericalError;
};

struct MaxSubdivisions : NumericalError {
    using NumericalError::NumericalError;
};

struct StepUnderflow : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace qthermo
