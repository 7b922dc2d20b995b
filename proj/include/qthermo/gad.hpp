#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qthermo/channels.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

// Time parametrization of the amplitude-damping family:
//   2 p(tau) - 1 = e^{-eps tau} sin^2(eps tau) - tanh(beta)
//   gamma(tau)   = 1 - e^{-2 lambda tau}
// The system Hamiltonian is sz (omega = 2 in GibbsSpec terms).
struct GadSchedule {
    double epsilon;
    double lambda;
    double beta;

    GibbsSpec gibbs() const { return GibbsSpec{beta, 2.0}; }
};

GadSchedule make_gad_schedule(double epsilon, double lambda, double beta);

struct PGamma {
    double p;
    double gamma;
};

PGamma schedule_eval(const GadSchedule& s, double tau);

QubitState evolve_gad(const QubitState& rho0, const GadSchedule& s, double tau);

BlochAffineMap bloch_map_gad(const GadSchedule& s, double tau);

// Dissipator weights of the time-local generator; the convention matches the
// closed-form trajectory (verified by the ODE cross-checks).
struct GadRates {
    double a_minus;
    double a_plus;
};

// Throws SingularRate when gamma(tau) has saturated to 1 in double precision.
GadRates generator_rates(const GadSchedule& s, double tau);

Eigen::Vector3d bloch_velocity_gad(const GadSchedule& s, const QubitState& state, double tau);

// Integrated entropy production from the analytic relative-entropy difference,
// stable up to pure initial states.
double sigma_integrated_gad(const QubitState& rho0, const GadSchedule& s, double tau);

struct Fig1Result {
    std::vector<double> taus;
    std::vector<double> Sigmas;
    // maximal intervals of the grid where Sigma < 0, refined by bisection
    std::vector<std::pair<double, double>> negative_windows;
    double sigma_min = 0.0;
    double tau_at_min = 0.0;  // refined to ~1e-10 by golden-section search
};

// Dense scan of Sigma for the maximally mixed initial state over [0, horizon].
Fig1Result fig1_scan(const GadSchedule& s, double horizon, int grid_points);

} // namespace qthermo
