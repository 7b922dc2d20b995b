#pragma once

#include <utility>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

// Bath coupling profile |f(omega)|^2 = omega^s / omega_c^{s-1} * e^{-omega/omega_c}.
struct SpectralDensity {
    double s;
    double omega_c;
};

SpectralDensity make_spectral_density(double s, double omega_c);

struct DephasingConfig {
    SpectralDensity density;
    double beta;
    double lambda;
    QubitState rho0;

    // |rho_01|^2 and the population product of the initial state
    double coherence_sq() const { return 0.25 * (rho0.x * rho0.x + rho0.y * rho0.y); }
    double population_product() const { return 0.25 * (1.0 - rho0.z * rho0.z); }
    // The perturbative ledger formulas hold at order lambda^2.
    bool weak_coupling() const { return lambda <= 0.3; }
};

DephasingConfig make_dephasing_config(SpectralDensity density, double beta, double lambda,
                                      QubitState rho0);

// Decoherence integral over the bath continuum (dimensionless).
// Rejects s <= 1, where the low-frequency tail of the level integral is not
// under control at finite temperature.
double gamma_dephasing(const DephasingConfig& c, double tau);

// Interaction-energy integral (units of omega_c); defined for all s > 0.
double delta_heat(const DephasingConfig& c, double tau);

// Time derivatives of the two integrals by quadrature of the rate kernels;
// both converge for every s > 0.
double d_gamma(const DephasingConfig& c, double tau);
double d_delta(const DephasingConfig& c, double tau);

// Analytic rate of delta_heat: (omega_c^2/2) G(s+1) sin((s+1) arctan T) /
// (1+T^2)^{(s+1)/2} with T = omega_c tau and G the Euler gamma function.
double d_delta_closed(const DephasingConfig& c, double tau);

// High-temperature closed form of d_gamma; requires s > 1.
double d_gamma_highT(const DephasingConfig& c, double tau);

// Riemann-sum stand-in for the continuum: K modes uniform on (0, 50 omega_c],
// weights |f(omega_k)|^2 * d_omega (right endpoints).
double discrete_mode_gamma(const DephasingConfig& c, double tau, int modes);

// Reduced state at time tau: populations frozen, coherence magnitude scaled
// by e^{-8 lambda^2 Gamma}. Any bath-induced phase drops out of every ledger
// quantity and is omitted.
QubitState evolve_dephasing(const DephasingConfig& c, double tau);

// 16 lambda^2 |rho_01|^2 e^{-16 lambda^2 Gamma} (L(r_S)/r_S) dGamma with
// r_S the evolved Bloch radius; sign equals sign(dGamma) whenever coherent.
double system_entropy_rate(const DephasingConfig& c, double tau);

struct BathRates {
    double dQ_B;
    double dS_B;  // beta * dQ_B at the implemented order
};

BathRates bath_rates(const DephasingConfig& c, double tau);

// -(dQ_S + dQ_B) = -dQ_B here, since the system heat flux vanishes identically.
double binding_energy_rate(const DephasingConfig& c, double tau);

// Intervals of [tau_lo, tau_hi] where the system and bath entropy rates are
// simultaneously negative; edges refined by bisection to 1e-6 in tau. The scan
// runs on the rate kernels (dGamma, analytic dDelta), whose signs equal the
// entropy-rate signs whenever the initial state is coherent and mixed, so it
// also covers s <= 1 where the level integral is rejected.
std::vector<std::pair<double, double>> find_negative_window(const DephasingConfig& c,
                                                            double tau_lo, double tau_hi,
                                                            int grid_points = 2000);

// Pointwise second-law rate dS_S + dS_B.
double second_law_balance(const DephasingConfig& c, double tau);

struct BalanceSeries {
    std::vector<double> taus;
    std::vector<double> rates;     // dS_S + dS_B
    std::vector<double> integral;  // running trapezoid of the rate
};

BalanceSeries second_law_cumulative(const DephasingConfig& c, double horizon,
                                    int grid_points);

// Smallest ohmicity above which dGamma turns negative somewhere; bisection
// against a log-spaced sweep of omega_c tau up to 50 (limits 2 and 3 at the
// cold and hot ends of the bath are reproduced to within ~0.03).
double find_critical_ohmicity(double beta, double omega_c);

} // namespace qthermo
