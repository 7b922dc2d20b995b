#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qthermo/errors.hpp"

namespace qthermo {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; node 7 is the center).
inline constexpr double kGk15Nodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double kGauss7Weights[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

template <class F>
void gk15_panel(F&& f, double a, double b, double& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - half * kGk15Nodes[i]);
        fk[14 - i] = f(mid + half * kGk15Nodes[i]);
    }
    fk[7] = f(mid);
    double resk = kGk15Weights[7] * fk[7];
    double resg = kGauss7Weights[3] * fk[7];
    for (int i = 0; i < 7; ++i) {
        resk += kGk15Weights[i] * (fk[i] + fk[14 - i]);
        if (i % 2 == 1) resg += kGauss7Weights[i / 2] * (fk[i] + fk[14 - i]);
    }
    kronrod = resk * half;
    err = std::abs((resk - resg) * half);
}

} // namespace detail

// Adaptive quadrature of f over [a, b]: bisect the worst panel (leftmost on ties)
// until the summed error estimate drops below tol. Deterministic for fixed inputs.
template <class F>
QuadratureResult adaptive_quad(F&& f, double a, double b, double tol = 1e-10,
                               int max_panels = 4000) {
    struct Segment {
        double a, b, value, error;
    };
    if (!(b >= a)) throw ParameterOutOfRange("adaptive_quad: requires a <= b");
    if (a == b) return QuadratureResult{0.0, 0.0, 0};

    std::vector<Segment> segs;
    {
        double v, e;
        detail::gk15_panel(f, a, b, v, e);
        segs.push_back({a, b, v, e});
    }
    auto total_error = [&segs] {
        double s = 0.0;
        for (const auto& sg : segs) s += sg.error;
        return s;
    };
    while (total_error() > tol) {
        if (static_cast<int>(segs.size()) >= max_panels) {
            throw MaxSubdivisions("adaptive_quad: error " + std::to_string(total_error()) +
                                  " above tol " + std::to_string(tol) + " after " +
                                  std::to_string(segs.size()) + " panels");
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i) {
            if (segs[i].error > segs[worst].error) worst = i;
        }
        Segment s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            throw MaxSubdivisions("adaptive_quad: panel at [" + std::to_string(s.a) + ", " +
                                  std::to_string(s.b) + "] can no longer be bisected");
        }
        Segment left{s.a, m, 0.0, 0.0}, right{m, s.b, 0.0, 0.0};
        detail::gk15_panel(f, left.a, left.b, left.value, left.error);
        detail::gk15_panel(f, right.a, right.b, right.value, right.error);
        segs[worst] = left;
        segs.push_back(right);
    }
    // Sum in left-to-right order so the result does not depend on split history.
    std::sort(segs.begin(), segs.end(),
              [](const Segment& u, const Segment& v) { return u.a < v.a; });
    QuadratureResult out;
    out.panels = static_cast<int>(segs.size());
    for (const auto& sg : segs) {
        out.value += sg.value;
        out.error_estimate += sg.error;
    }
    return out;
}

struct OdeTrajectory {
    std::vector<double> grid;
    std::vector<Eigen::Vector3d> states;
};

namespace detail {

// One Cash-Karp 4(5) step: returns 5th-order solution and the embedded error vector.
template <class F>
void cash_karp_step(F&& f, double t, const Eigen::Vector3d& y, double h,
                    Eigen::Vector3d& y5, Eigen::Vector3d& err) {
    using V = Eigen::Vector3d;
    const V k1 = f(t, y);
    const V k2 = f(t + h / 5.0, V(y + h * (k1 / 5.0)));
    const V k3 = f(t + 3.0 * h / 10.0, V(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2)));
    const V k4 = f(t + 3.0 * h / 5.0,
                   V(y + h * (3.0 / 10.0 * k1 - 9.0 / 10.0 * k2 + 6.0 / 5.0 * k3)));
    const V k5 = f(t + h, V(y + h * (-11.0 / 54.0 * k1 + 5.0 / 2.0 * k2 -
                                     70.0 / 27.0 * k3 + 35.0 / 27.0 * k4)));
    const V k6 = f(t + 7.0 * h / 8.0,
                   V(y + h * (1631.0 / 55296.0 * k1 + 175.0 / 512.0 * k2 +
                              575.0 / 13824.0 * k3 + 44275.0 / 110592.0 * k4 +
                              253.0 / 4096.0 * k5)));
    y5 = y + h * (37.0 / 378.0 * k1 + 250.0 / 621.0 * k3 + 125.0 / 594.0 * k4 +
                  512.0 / 1771.0 * k6);
    const V y4 = y + h * (2825.0 / 27648.0 * k1 + 18575.0 / 48384.0 * k3 +
                          13525.0 / 55296.0 * k4 + 277.0 / 14336.0 * k5 + 0.25 * k6);
    err = y5 - y4;
}

template <class F, class OnAccept>
void ode_drive(F&& f, Eigen::Vector3d y, double t0, double t_end, double tol,
               OnAccept&& on_accept) {
    if (t_end < t0) throw ParameterOutOfRange("ode_rk: t_end must be >= start time");
    const double t_scale = std::max(std::abs(t_end - t0), 1.0);
    double t = t0;
    double h = std::min(1e-2 * t_scale, t_end - t0);
    if (h <= 0.0) return;
    while (t < t_end) {
        bool clipped = false;
        if (t + h >= t_end) {
            h = t_end - t;
            clipped = true;
        }
        Eigen::Vector3d y5, err;
        cash_karp_step(f, t, y, h, y5, err);
        double norm = 0.0;
        for (int i = 0; i < 3; ++i) {
            double e = std::abs(err[i]) / (tol + tol * std::abs(y[i]));
            // std::max would silently drop a NaN component (NaN comparisons are
            // false), accepting the step with a poisoned state; propagate it so
            // the step is rejected and the shrink guard below takes over.
            if (!std::isfinite(e)) {
                norm = e;
                break;
            }
            norm = std::max(norm, e);
        }
        if (norm <= 1.0) {
            t = clipped ? t_end : t + h;
            y = y5;
            on_accept(t, y);
        }
        // A non-finite error norm (singular field) must keep shrinking the step
        // so the underflow guard below can fire.
        double factor = 0.2;
        if (std::isfinite(norm)) factor = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < 1e-14 * t_scale) {
            throw StepUnderflow("ode_rk: step size underflow at t = " + std::to_string(t));
        }
    }
}

} // namespace detail

// Adaptive embedded Runge-Kutta over a 3-component field; records accepted steps.
template <class F>
OdeTrajectory ode_rk(F&& f, const Eigen::Vector3d& y0, double t_end, double tol = 1e-9) {
    OdeTrajectory traj;
    traj.grid.push_back(0.0);
    traj.states.push_back(y0);
    detail::ode_drive(f, y0, 0.0, t_end, tol, [&traj](double t, const Eigen::Vector3d& y) {
        traj.grid.push_back(t);
        traj.states.push_back(y);
    });
    return traj;
}

// Integrate hitting each requested time exactly; times must be nondecreasing, >= 0.
template <class F>
std::vector<Eigen::Vector3d> ode_rk_sample(F&& f, const Eigen::Vector3d& y0,
                                           const std::vector<double>& times,
                                           double tol = 1e-9) {
    std::vector<Eigen::Vector3d> out;
    out.reserve(times.size());
    Eigen::Vector3d y = y0;
    double t = 0.0;
    for (double target : times) {
        if (target < t) throw ParameterOutOfRange("ode_rk_sample: times must be nondecreasing");
        if (target > t) {
            Eigen::Vector3d last = y;
            detail::ode_drive(f, y, t, target, tol,
                              [&last](double, const Eigen::Vector3d& yy) { last = yy; });
            y = last;
            t = target;
        }
        out.push_back(y);
    }
    return out;
}

template <class G>
double central_diff(G&& g, double t, double h) {
    return (g(t + h) - g(t - h)) / (2.0 * h);
}

// Richardson extrapolation of the central difference: O(h^4).
template <class G>
double central_diff_richardson(G&& g, double t, double h) {
    double d1 = central_diff(g, t, h);
    double d2 = central_diff(g, t, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

// Counter-based generator: value at (index, slot) is a pure function of
// (seed, index, slot), so parallel sweeps draw identical streams in any order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed = kDefaultSeed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t index, std::uint64_t slot) const {
        std::uint64_t x = seed_;
        x ^= mix(index + 0x9E3779B97F4A7C15ULL);
        x ^= mix(slot + 0xC2B2AE3D27D4EB4FULL) + (x << 6) + (x >> 2);
        return mix(x);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t index, std::uint64_t slot) const {
        return static_cast<double>(bits(index, slot) >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi, std::uint64_t index, std::uint64_t slot) const {
        return lo + (hi - lo) * uniform(index, slot);
    }

    // Standard normal via Box-Muller; consumes slots (2*slot, 2*slot + 1).
    double normal(std::uint64_t index, std::uint64_t slot) const {
        double u1 = uniform(index, 2 * slot);
        double u2 = uniform(index, 2 * slot + 1);
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t seed() const { return seed_; }

    static constexpr std::uint64_t kDefaultSeed = 0x51AB0102030405ULL;

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
};

// Uniformly spaced grid of n points covering [0, horizon]; n >= 2.
inline std::vector<double> uniform_grid(double horizon, int n) {
    if (n < 2) throw ParameterOutOfRange("uniform_grid: need at least 2 points");
    if (!(horizon > 0.0)) throw ParameterOutOfRange("uniform_grid: horizon must be > 0");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = horizon * static_cast<double>(i) / (n - 1);
    }
    return g;
}

} // namespace qthermo
