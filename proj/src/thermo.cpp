#include "qthermo/thermo.hpp"

#include <cmath>
#include <string>

namespace qthermo {

double heat_flux(const QubitState&, const Eigen::Vector3d& dstate, const GibbsSpec& spec) {
    return 0.5 * spec.omega * dstate[2];
}

double entropy_rate(const QubitState& state, const Eigen::Vector3d& dstate) {
    double r = state.r();
    // r dr = x dx + y dy + z dz stays finite at r = 0, where the rate vanishes.
    double r_dr = state.x * dstate[0] + state.y * dstate[1] + state.z * dstate[2];
    if (r >= 1.0 - 1e-12) {
        if (std::abs(r_dr) <= 1e-12) return 0.0;
        throw PureStateSingularity("entropy_rate: r = " + std::to_string(r) +
                                   " with nonzero radial velocity");
    }
    return -0.5 * detail::log_ratio_over_r(r) * r_dr;
}

double entropy_production(const QubitState& state, const Eigen::Vector3d& dstate,
                          const GibbsSpec& spec) {
    return entropy_rate(state, dstate) - spec.beta * heat_flux(state, dstate, spec);
}

IntegratedSigma integrated_entropy_production(const std::vector<ThermoSample>& series,
                                              const GibbsSpec& spec,
                                              const QubitState& initial,
                                              const QubitState& final_state) {
    if (series.size() < 2) {
        throw ParameterOutOfRange("integrated_entropy_production: need at least 2 samples");
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i].tau > series[i - 1].tau)) {
            throw ParameterOutOfRange("integrated_entropy_production: grid must increase");
        }
    }
    IntegratedSigma out;
    double acc = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        double h = series[i].tau - series[i - 1].tau;
        acc += 0.5 * h * (series[i].sigma + series[i - 1].sigma);
    }
    out.quadrature = acc;
    QubitState ref = gibbs_state(spec);
    out.relent_difference = relative_entropy(initial, ref) - relative_entropy(final_state, ref);

    double scale = std::max({1.0, std::abs(out.quadrature), std::abs(out.relent_difference)});
    double tol = 1e-5 * scale + 1e-8;
    if (std::abs(out.quadrature - out.relent_difference) > 10.0 * tol) {
        throw GridTooCoarse("integrated_entropy_production: quadrature " +
                            std::to_string(out.quadrature) + " vs relative-entropy route " +
                            std::to_string(out.relent_difference));
    }
    return out;
}

std::vector<ThermoSample> build_series(
    const std::function<QubitState(double)>& state_at,
    const std::function<Eigen::Vector3d(double)>& velocity_at,
    const GibbsSpec& spec, const std::vector<double>& grid) {
    if (grid.empty()) throw ParameterOutOfRange("build_series: empty grid");
    QubitState ref = gibbs_state(spec);
    std::vector<ThermoSample> out;
    out.reserve(grid.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double tau = grid[i];
        QubitState st = state_at(tau);
        Eigen::Vector3d vel = velocity_at(tau);
        ThermoSample s;
        s.tau = tau;
        s.S = von_neumann_entropy(st);
        s.dS = entropy_rate(st, vel);
        s.dQ = heat_flux(st, vel, spec);
        s.sigma = s.dS - spec.beta * s.dQ;
        if (i > 0) {
            double h = tau - out.back().tau;
            if (!(h > 0.0)) throw ParameterOutOfRange("build_series: grid must increase");
            acc += 0.5 * h * (s.sigma + out.back().sigma);
        }
        s.Sigma = acc;
        s.relent = relative_entropy(st, ref);
        out.push_back(s);
    }
    return out;
}

} // namespace qthermo
