#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

// One record of the thermodynamic ledger on a time grid.
struct ThermoSample {
    double tau = 0.0;
    double S = 0.0;       // entropy, nats
    double dS = 0.0;      // entropy rate
    double dQ = 0.0;      // heat flux
    double sigma = 0.0;   // entropy production rate, dS - beta dQ
    double Sigma = 0.0;   // running integral of sigma (trapezoid on the grid)
    double relent = 0.0;  // relative entropy to the thermal reference
};

// Heat flux for H = (omega/2) sz: (omega/2) * dz.
double heat_flux(const QubitState& state, const Eigen::Vector3d& dstate,
                 const GibbsSpec& spec);

// -(1/2) log((1+r)/(1-r)) * dr, with dr = (x dx + y dy + z dz)/r; 0 at r = 0.
// Throws PureStateSingularity when r >= 1 - 1e-12 with dr != 0.
double entropy_rate(const QubitState& state, const Eigen::Vector3d& dstate);

double entropy_production(const QubitState& state, const Eigen::Vector3d& dstate,
                          const GibbsSpec& spec);

struct IntegratedSigma {
    double quadrature = 0.0;          // trapezoid of sigma over the grid
    double relent_difference = 0.0;   // relent(first) - relent(last)
};

// Both routes to the integrated production; throws GridTooCoarse when they
// disagree beyond 10x the expected grid tolerance (1e-5 relative, 1e-8 floor).
IntegratedSigma integrated_entropy_production(const std::vector<ThermoSample>& series,
                                              const GibbsSpec& spec,
                                              const QubitState& initial,
                                              const QubitState& final_state);

// Evaluates the full ledger along a trajectory given by state and velocity
// closures; Sigma is accumulated by trapezoid in grid order.
std::vector<ThermoSample> build_series(
    const std::function<QubitState(double)>& state_at,
    const std::function<Eigen::Vector3d(double)>& velocity_at,
    const GibbsSpec& spec, const std::vector<double>& grid);

} // namespace qthermo
