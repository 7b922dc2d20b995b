#pragma once

#include <Eigen/Dense>

#include "qthermo/errors.hpp"

namespace qthermo {

// Bloch-vector representation of a one-qubit density matrix
// rho = (I + x sx + y sy + z sz) / 2, valid iff r = |(x,y,z)| <= 1.
struct QubitState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double r() const;
};

// Thermal reference for H = (omega/2) sz at inverse temperature beta.
struct GibbsSpec {
    double beta;   // 1/energy, >= 0
    double omega;  // energy, > 0

    // mean excitation number (e^{beta omega} - 1)^{-1}
    double occupation() const;
    // equilibrium Bloch z component, -tanh(beta omega / 2)
    double z_eq() const;
};

GibbsSpec make_gibbs_spec(double beta, double omega);

QubitState state_from_bloch(double x, double y, double z);

QubitState gibbs_state(const GibbsSpec& spec);

Eigen::Matrix2cd density_matrix(const QubitState& state);
QubitState state_from_matrix(const Eigen::Matrix2cd& rho);

// Entropy in nats; eigenvalues (1 +- r)/2, with 0 log 0 := 0 at r = 1.
double von_neumann_entropy(const QubitState& state);

// S(rho || sigma) in nats via the 2x2 eigendecompositions in closed form.
// Throws InfiniteRelativeEntropy when sigma is pure and rho differs from it.
double relative_entropy(const QubitState& rho, const QubitState& sigma);

namespace detail {
// log((1+r)/(1-r)) / r, extended by its limit 2 at r = 0.
// Diverges only at r -> 1; callers guard that edge.
double log_ratio_over_r(double r);

// (1+r)/2 log(1+r) + (1-r)/2 log(1-r); entropy deficit log2 - S(r).
// Well defined on [0, 1] including the pure-state endpoint.
double entropy_deficit(double r);
} // namespace detail

} // namespace qthermo
