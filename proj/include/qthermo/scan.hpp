#pragma once

#include <cstdint>
#include <vector>

#include "qthermo/damping.hpp"
#include "qthermo/gad.hpp"
#include "qthermo/numerics.hpp"

namespace qthermo {

// Randomized sweep kernels. Each point is a pure function of (seed, index)
// writing into its own slot, so parallel and serial runs produce identical
// results bit for bit; reductions happen serially afterwards.

struct SweepOptions {
    std::size_t n = 10000;
    std::uint64_t seed = CounterRng::kDefaultSeed;
    bool parallel = true;
};

// Entropy-production sign law for the damped qubit: random states, thermal
// parameters and sign-changing rate profiles whose running integral stays
// nonnegative; compares the sign of the generic ledger rate against the sign
// of the instantaneous damping rate and tracks the analytic bracket term.
struct SignSweepResult {
    std::size_t evaluated = 0;       // points where the sign comparison is decidable
    std::size_t skipped = 0;         // rate or bracket too close to zero to call
    std::size_t sign_violations = 0;
    std::size_t negative_rate_hits = 0;  // decidable points with a negative rate
    double min_bracket = 0.0;
    std::int64_t first_violation = -1;
};

SignSweepResult sign_sweep(const SweepOptions& opts);

// Relative-entropy contraction under random channels applied to random pairs.
struct DataProcResult {
    std::size_t n = 0;
    std::size_t violations = 0;
    double max_increase = 0.0;  // most positive value of relent(after) - relent(before)
};

DataProcResult data_processing_sweep(const SweepOptions& opts);

// Integrated-production curve of the amplitude-damping family on a uniform
// grid (maximally mixed start); the workhorse grid kernel for benchmarks.
std::vector<double> gad_sigma_grid(const GadSchedule& s, double horizon, int grid_points,
                                   bool parallel);

} // namespace qthermo
