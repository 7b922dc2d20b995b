#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qthermo/channels.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

// Time-dependent damping rate gamma(tau). The oscillating kind is
// gamma0 * (1 - a cos(nu tau + phase)); with phase = pi/2 this is
// gamma0 * (1 + a sin(nu tau)), whose running integral stays nonnegative
// for every a >= 0 while the rate itself dips negative once a > 1.
struct DampingProfile {
    enum class Kind { Constant, Oscillating, Sampled };

    Kind kind = Kind::Constant;
    double gamma0 = 1.0;
    double a = 0.0;
    double nu = 1.0;
    double phase = 0.0;
    std::vector<double> taus;    // sampled kind only; strictly increasing from 0
    std::vector<double> gammas;

    static DampingProfile constant(double gamma0);
    static DampingProfile oscillating(double gamma0, double a, double nu,
                                      double phase = M_PI / 2.0);
    static DampingProfile sampled(std::vector<double> taus, std::vector<double> gammas);

    double operator()(double tau) const;

    // Running integral of gamma from 0; analytic for the parametric kinds,
    // trapezoid on the table for the sampled kind.
    double integral(double tau) const;

    // Shortest oscillation period, or +inf when the rate has none.
    double min_period() const;
};

struct DampingParams {
    DampingProfile profile;
    GibbsSpec spec;
};

DampingParams make_damping_params(DampingProfile profile, GibbsSpec spec);

// Decoherence exponent (1/2) coth(beta omega / 2) * integral of gamma, via
// adaptive quadrature of the profile.
double gamma_integral(const DampingProfile& profile, const GibbsSpec& spec, double tau);

// Closed-form trajectory: transverse part rotated by omega tau and damped by
// exp(-Gamma); z relaxes toward z_eq with exp(-2 Gamma).
QubitState evolve_damping(const QubitState& rho0, const DampingParams& params, double tau);

// Instantaneous Bloch velocity of the generator whose solution is evolve_damping.
Eigen::Vector3d bloch_velocity_damping(const DampingParams& params,
                                       const QubitState& state, double tau);

// Affine form of the map at time tau (for divisibility analysis).
BlochAffineMap bloch_map_damping(const DampingParams& params, double tau);

enum class Divisibility { NotCP, CPDivisible, EssentiallyNonMarkovian };

const char* to_string(Divisibility d);

// Grid scan of gamma and its running integral over [0, horizon]:
// NotCP when the integral dips below -tol anywhere, CPDivisible when gamma
// never dips below -tol, EssentiallyNonMarkovian otherwise. The grid must
// resolve oscillations with at least 20 points per period.
Divisibility classify_divisibility(const DampingProfile& profile, double horizon,
                                   int grid_points);

// Entropy production evaluated from the analytic expression
// gamma(tau) coth(beta omega/2) e^{-2 Gamma} [A + B + C].
double entropy_production_closed(const QubitState& rho0, const DampingParams& params,
                                 double tau);

struct AbcTerms {
    double A = 0.0;  // transverse contribution, always >= 0
    double B = 0.0;  // longitudinal equilibrium term
    double C = 0.0;  // longitudinal cross term
};

AbcTerms abc_decomposition(const QubitState& rho0, const DampingParams& params, double tau);

// Checks 2x/(2+x) <= |log(1+x)| <= (x/2)(2+x)/(1+x) and the matching
// bounds for |log(1-x)| at a point of (0, 1).
bool log_inequality_check(double x);

// Checks that (1/x) log((1+x)/(1-x)) is increasing between two points of (0, 1).
bool f_monotone_check(double x1, double x2);

} // namespace qthermo
