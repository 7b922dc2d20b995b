#include "qthermo/damping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/numerics.hpp"

namespace qthermo {

DampingProfile DampingProfile::constant(double gamma0) {
    if (!std::isfinite(gamma0)) throw ParameterOutOfRange("DampingProfile: gamma0 must be finite");
    DampingProfile p;
    p.kind = Kind::Constant;
    p.gamma0 = gamma0;
    return p;
}

DampingProfile DampingProfile::oscillating(double gamma0, double a, double nu, double phase) {
    if (!std::isfinite(gamma0) || !std::isfinite(a) || !std::isfinite(phase) || !(nu > 0.0)) {
        throw ParameterOutOfRange("DampingProfile: oscillating kind needs finite parameters, nu > 0");
    }
    DampingProfile p;
    p.kind = Kind::Oscillating;
    p.gamma0 = gamma0;
    p.a = a;
    p.nu = nu;
    p.phase = phase;
    return p;
}

DampingProfile DampingProfile::sampled(std::vector<double> taus, std::vector<double> gammas) {
    if (taus.size() != gammas.size() || taus.size() < 2) {
        throw ParameterOutOfRange("DampingProfile: sampled table needs >= 2 matching rows");
    }
    if (taus.front() != 0.0) throw ParameterOutOfRange("DampingProfile: sampled table must start at 0");
    for (std::size_t i = 1; i < taus.size(); ++i) {
        if (!(taus[i] > taus[i - 1])) {
            throw ParameterOutOfRange("DampingProfile: sampled times must increase");
        }
    }
    DampingProfile p;
    p.kind = Kind::Sampled;
    p.taus = std::move(taus);
    p.gammas = std::move(gammas);
    return p;
}

double DampingProfile::operator()(double tau) const {
    switch (kind) {
        case Kind::Constant:
            return gamma0;
        case Kind::Oscillating:
            return gamma0 * (1.0 - a * std::cos(nu * tau + phase));
        case Kind::Sampled: {
            if (tau < taus.front() || tau > taus.back()) {
                throw ScheduleOutOfRange("DampingProfile: tau = " + std::to_string(tau) +
                                         " outside the sampled range [0, " +
                                         std::to_string(taus.back()) + "]");
            }
            auto it = std::upper_bound(taus.begin(), taus.end(), tau);
            if (it == taus.end()) return gammas.back();
            std::size_t hi = static_cast<std::size_t>(it - taus.begin());
            std::size_t lo = hi - 1;
            double w = (tau - taus[lo]) / (taus[hi] - taus[lo]);
            return gammas[lo] + w * (gammas[hi] - gammas[lo]);
        }
    }
    return 0.0;
}

double DampingProfile::integral(double tau) const {
    if (tau < 0.0) throw ParameterOutOfRange("DampingProfile::integral: tau must be >= 0");
    switch (kind) {
        case Kind::Constant:
            return gamma0 * tau;
        case Kind::Oscillating:
            return gamma0 * (tau - (a / nu) * (std::sin(nu * tau + phase) - std::sin(phase)));
        case Kind::Sampled: {
            if (tau > taus.back()) {
                throw ScheduleOutOfRange("DampingProfile::integral: tau beyond the sampled range");
            }
            double acc = 0.0;
            for (std::size_t i = 1; i < taus.size(); ++i) {
                if (taus[i] <= tau) {
                    acc += 0.5 * (taus[i] - taus[i - 1]) * (gammas[i] + gammas[i - 1]);
                } else {
                    double g = (*this)(tau);
                    acc += 0.5 * (tau - taus[i - 1]) * (g + gammas[i - 1]);
                    break;
                }
            }
            return acc;
        }
    }
    return 0.0;
}

double DampingProfile::min_period() const {
    if (kind == Kind::Oscillating) return 2.0 * M_PI / nu;
    return INFINITY;
}

DampingParams make_damping_params(DampingProfile profile, GibbsSpec spec) {
    if (!(spec.beta * spec.omega > 0.0)) {
        throw ParameterOutOfRange("make_damping_params: beta * omega must be > 0 "
                                  "(the mean occupation diverges otherwise)");
    }
    return DampingParams{std::move(profile), spec};
}

namespace {

double coth_half(const GibbsSpec& spec) {
    return 1.0 / std::tanh(spec.beta * spec.omega / 2.0);
}

double gamma_exponent(const DampingParams& params, double tau) {
    return 0.5 * coth_half(params.spec) * params.profile.integral(tau);
}

} // namespace

double gamma_integral(const DampingProfile& profile, const GibbsSpec& spec, double tau) {
    if (tau < 0.0) throw ParameterOutOfRange("gamma_integral: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    auto result = adaptive_quad([&profile](double t) { return profile(t); }, 0.0, tau, 1e-12);
    return 0.5 * coth_half(spec) * result.value;
}

QubitState evolve_damping(const QubitState& rho0, const DampingParams& params, double tau) {
    double g = gamma_exponent(params, tau);
    double e1 = std::exp(-g);
    double e2 = e1 * e1;
    double w = params.spec.omega * tau;
    double c = std::cos(w), s = std::sin(w);
    double zeq = params.spec.z_eq();
    double x = e1 * (c * rho0.x - s * rho0.y);
    double y = e1 * (s * rho0.x + c * rho0.y);
    double z = e2 * (rho0.z - zeq) + zeq;
    return state_from_bloch(x, y, z);
}

Eigen::Vector3d bloch_velocity_damping(const DampingParams& params,
                                       const QubitState& state, double tau) {
    double g = 0.5 * params.profile(tau) * coth_half(params.spec);
    double w = params.spec.omega;
    double zeq = params.spec.z_eq();
    return Eigen::Vector3d(-g * state.x - w * state.y,
                           w * state.x - g * state.y,
                           -2.0 * g * (state.z - zeq));
}

BlochAffineMap bloch_map_damping(const DampingParams& params, double tau) {
    double g = gamma_exponent(params, tau);
    double e1 = std::exp(-g);
    double e2 = e1 * e1;
    double w = params.spec.omega * tau;
    double c = std::cos(w), s = std::sin(w);
    double zeq = params.spec.z_eq();
    BlochAffineMap map;
    map.linear << e1 * c, -e1 * s, 0.0,
                  e1 * s,  e1 * c, 0.0,
                  0.0,     0.0,    e2;
    map.shift = Eigen::Vector3d(0.0, 0.0, zeq * (1.0 - e2));
    return map;
}

const char* to_string(Divisibility d) {
    switch (d) {
        case Divisibility::NotCP: return "NotCP";
        case Divisibility::CPDivisible: return "CPDivisible";
        case Divisibility::EssentiallyNonMarkovian: return "EssentiallyNonMarkovian";
    }
    return "?";
}

Divisibility classify_divisibility(const DampingProfile& profile, double horizon,
                                   int grid_points) {
    if (!(horizon > 0.0) || grid_points < 2) {
        throw ParameterOutOfRange("classify_divisibility: need horizon > 0 and >= 2 grid points");
    }
    double period = profile.min_period();
    if (std::isfinite(period)) {
        double needed = 20.0 * horizon / period;
        if (static_cast<double>(grid_points) < needed) {
            throw GridTooCoarse("classify_divisibility: " + std::to_string(grid_points) +
                                " points cannot resolve oscillations; need >= " +
                                std::to_string(static_cast<int>(std::ceil(needed))));
        }
    }
    constexpr double kTol = 1e-9;
    bool rate_negative = false;
    for (int i = 0; i < grid_points; ++i) {
        double tau = horizon * static_cast<double>(i) / (grid_points - 1);
        if (profile.integral(tau) < -kTol) return Divisibility::NotCP;
        if (profile(tau) < -kTol) rate_negative = true;
    }
    return rate_negative ? Divisibility::EssentiallyNonMarkovian : Divisibility::CPDivisible;
}

AbcTerms abc_decomposition(const QubitState& rho0, const DampingParams& params, double tau) {
    QubitState st = evolve_damping(rho0, params, tau);
    double r = st.r();
    if (r >= 1.0 - 1e-12) {
        throw PureStateSingularity("abc_decomposition: evolved state is pure (r = " +
                                   std::to_string(r) + ")");
    }
    double lr = detail::log_ratio_over_r(r);
    double az = -params.spec.z_eq();  // |z_eq| = tanh(beta omega / 2)
    AbcTerms t;
    t.A = 0.25 * (rho0.x * rho0.x + rho0.y * rho0.y) * lr;
    t.B = 0.5 * (rho0.z + az) * params.spec.beta * params.spec.omega;
    t.C = 0.5 * (rho0.z + az) * st.z * lr;
    return t;
}

double entropy_production_closed(const QubitState& rho0, const DampingParams& params,
                                 double tau) {
    AbcTerms t = abc_decomposition(rho0, params, tau);
    double e2 = std::exp(-2.0 * gamma_exponent(params, tau));
    return params.profile(tau) * coth_half(params.spec) * e2 * (t.A + t.B + t.C);
}

bool log_inequality_check(double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw ParameterOutOfRange("log_inequality_check: x must lie in (0, 1)");
    }
    double up = std::log1p(x);
    double dn = -std::log1p(-x);
    bool ok = 2.0 * x / (2.0 + x) <= up && up <= 0.5 * x * (2.0 + x) / (1.0 + x);
    ok = ok && 2.0 * x / (2.0 - x) <= dn && dn <= 0.5 * x * (2.0 - x) / (1.0 - x);
    return ok;
}

bool f_monotone_check(double x1, double x2) {
    if (!(x1 > 0.0 && x1 < x2 && x2 < 1.0)) {
        throw ParameterOutOfRange("f_monotone_check: need 0 < x1 < x2 < 1");
    }
    return detail::log_ratio_over_r(x1) <= detail::log_ratio_over_r(x2);
}

} // namespace qthermo
