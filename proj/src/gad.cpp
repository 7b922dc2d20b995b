#include "qthermo/gad.hpp"

#include <cmath>
#include <string>

namespace qthermo {

namespace {

// e^{-eps tau} sin^2(eps tau); bounded by 0.2644 over tau >= 0.
double modulation(const GadSchedule& s, double tau) {
    double u = s.epsilon * tau;
    double sn = std::sin(u);
    return std::exp(-u) * sn * sn;
}

double modulation_max() {
    // Stationary point of e^{-u} sin^2(u) at tan(u) = 2.
    double u = std::atan(2.0);
    double sn = std::sin(u);
    return std::exp(-u) * sn * sn;
}

double two_p_minus_one(const GadSchedule& s, double tau) {
    return modulation(s, tau) - std::tanh(s.beta);
}

} // namespace

GadSchedule make_gad_schedule(double epsilon, double lambda, double beta) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw ParameterOutOfRange("GadSchedule: epsilon must be finite and >= 0");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ParameterOutOfRange("GadSchedule: lambda must be finite and > 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ParameterOutOfRange("GadSchedule: beta must be finite and >= 0");
    }
    // p stays within [0, 1] iff the modulation range does not push 2p-1 out of
    // [-1, 1]; check the analytic extremes.
    double hi = 1.0 + modulation_max() - std::tanh(beta);
    double lo = 1.0 - std::tanh(beta);
    if (lo < 0.0 || hi > 2.0) {
        throw ScheduleOutOfRange("GadSchedule: excitation weight leaves [0, 1]");
    }
    return GadSchedule{epsilon, lambda, beta};
}

PGamma schedule_eval(const GadSchedule& s, double tau) {
    if (!(tau >= 0.0)) {
        throw ScheduleOutOfRange("schedule_eval: tau must be >= 0, got " + std::to_string(tau));
    }
    double p = 0.5 * (1.0 + two_p_minus_one(s, tau));
    double gamma = -std::expm1(-2.0 * s.lambda * tau);
    return PGamma{p, gamma};
}

QubitState evolve_gad(const QubitState& rho0, const GadSchedule& s, double tau) {
    PGamma pg = schedule_eval(s, tau);
    double k = std::sqrt(1.0 - pg.gamma);
    double z = pg.gamma * two_p_minus_one(s, tau) + rho0.z * (1.0 - pg.gamma);
    return state_from_bloch(k * rho0.x, k * rho0.y, z);
}

BlochAffineMap bloch_map_gad(const GadSchedule& s, double tau) {
    PGamma pg = schedule_eval(s, tau);
    double k = std::sqrt(1.0 - pg.gamma);
    BlochAffineMap map;
    map.linear = Eigen::Vector3d(k, k, 1.0 - pg.gamma).asDiagonal();
    map.shift = Eigen::Vector3d(0.0, 0.0, pg.gamma * two_p_minus_one(s, tau));
    return map;
}

GadRates generator_rates(const GadSchedule& s, double tau) {
    double e2 = std::exp(-2.0 * s.lambda * tau);
    if (e2 == 0.0) {
        double tau_max = 744.0 / (2.0 * s.lambda);
        throw SingularRate("generator_rates: gamma has saturated to 1; keep tau below ~" +
                           std::to_string(tau_max));
    }
    PGamma pg = schedule_eval(s, tau);
    // dgamma/(1 - gamma) = 2 lambda exactly for this schedule.
    double rel_dgamma = 2.0 * s.lambda;
    double u = s.epsilon * tau;
    double dp = 0.5 * s.epsilon * std::exp(-u) * (std::sin(2.0 * u) - std::sin(u) * std::sin(u));
    double a_plus = 0.25 * (pg.p * rel_dgamma + pg.gamma * dp);
    double a_minus = 0.25 * ((1.0 - pg.p) * rel_dgamma - pg.gamma * dp);
    return GadRates{a_minus, a_plus};
}

Eigen::Vector3d bloch_velocity_gad(const GadSchedule& s, const QubitState& state, double tau) {
    GadRates r = generator_rates(s, tau);
    double sum = r.a_minus + r.a_plus;
    double diff = r.a_minus - r.a_plus;
    return Eigen::Vector3d(-2.0 * sum * state.x,
                           -2.0 * sum * state.y,
                           -4.0 * sum * state.z - 4.0 * diff);
}

double sigma_integrated_gad(const QubitState& rho0, const GadSchedule& s, double tau) {
    QubitState st = evolve_gad(rho0, s, tau);
    // Relative-entropy difference to the Gibbs state of sz, written through
    // the entropy deficit so pure states stay finite.
    return detail::entropy_deficit(rho0.r()) - detail::entropy_deficit(st.r()) +
           s.beta * (rho0.z - st.z);
}

namespace {

double refine_zero(const GadSchedule& s, const QubitState& rho0, double lo, double hi) {
    double flo = sigma_integrated_gad(rho0, s, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(hi, 1.0); ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = sigma_integrated_gad(rho0, s, mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double golden_min(const GadSchedule& s, const QubitState& rho0, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = sigma_integrated_gad(rho0, s, c);
    double fd = sigma_integrated_gad(rho0, s, d);
    while (b - a > 1e-11 * std::max(1.0, hi)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = sigma_integrated_gad(rho0, s, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = sigma_integrated_gad(rho0, s, d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

Fig1Result fig1_scan(const GadSchedule& s, double horizon, int grid_points) {
    if (!(horizon > 0.0) || grid_points < 2) {
        throw ParameterOutOfRange("fig1_scan: need horizon > 0 and >= 2 grid points");
    }
    QubitState rho0 = state_from_bloch(0.0, 0.0, 0.0);
    Fig1Result out;
    out.taus.resize(static_cast<std::size_t>(grid_points));
    out.Sigmas.resize(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        double tau = horizon * static_cast<double>(i) / (grid_points - 1);
        out.taus[static_cast<std::size_t>(i)] = tau;
        out.Sigmas[static_cast<std::size_t>(i)] = sigma_integrated_gad(rho0, s, tau);
    }

    // Sign-change windows, refined by bisection on the grid cells.
    bool open = false;
    double window_lo = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < out.taus.size(); ++i) {
        if (out.Sigmas[i] < out.Sigmas[arg]) arg = i;
        bool neg = out.Sigmas[i] < 0.0;
        if (neg && !open) {
            window_lo = i == 0 ? out.taus[0] : refine_zero(s, rho0, out.taus[i - 1], out.taus[i]);
            open = true;
        } else if (!neg && open) {
            out.negative_windows.emplace_back(window_lo,
                                              refine_zero(s, rho0, out.taus[i - 1], out.taus[i]));
            open = false;
        }
    }
    if (open) out.negative_windows.emplace_back(window_lo, out.taus.back());

    double lo = arg == 0 ? out.taus[0] : out.taus[arg - 1];
    double hi = arg + 1 < out.taus.size() ? out.taus[arg + 1] : out.taus.back();
    out.tau_at_min = golden_min(s, rho0, lo, hi);
    out.sigma_min = sigma_integrated_gad(rho0, s, out.tau_at_min);
    if (out.Sigmas[arg] < out.sigma_min) {
        out.sigma_min = out.Sigmas[arg];
        out.tau_at_min = out.taus[arg];
    }
    return out;
}

} // namespace qthermo
