#include "qthermo/qstate.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace qthermo {

namespace {

constexpr double kBallTol = 1e-12;
constexpr double kPureTol = 1e-12;

double clamp_eigenvalue(double lambda) {
    // Floating-point drift can push an eigenvalue slightly below zero.
    if (lambda < 0.0 && lambda > -1e-14) return 0.0;
    return lambda;
}

double xlogx(double v) {
    return v > 0.0 ? v * std::log(v) : 0.0;
}

} // namespace

double QubitState::r() const {
    return std::sqrt(x * x + y * y + z * z);
}

double GibbsSpec::occupation() const {
    return 1.0 / std::expm1(beta * omega);
}

double GibbsSpec::z_eq() const {
    return -std::tanh(beta * omega / 2.0);
}

GibbsSpec make_gibbs_spec(double beta, double omega) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ParameterOutOfRange("GibbsSpec: beta must be finite and >= 0, got " + std::to_string(beta));
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw ParameterOutOfRange("GibbsSpec: omega must be finite and > 0, got " + std::to_string(omega));
    }
    return GibbsSpec{beta, omega};
}

QubitState state_from_bloch(double x, double y, double z) {
    QubitState s{x, y, z};
    double r = s.r();
    if (!std::isfinite(r) || r > 1.0 + kBallTol) {
        std::ostringstream msg;
        msg << "Bloch vector (" << x << ", " << y << ", " << z << ") has norm " << r
            << " outside the unit ball";
        throw BlochOutOfBall(msg.str());
    }
    return s;
}

QubitState gibbs_state(const GibbsSpec& spec) {
    return QubitState{0.0, 0.0, spec.z_eq()};
}

Eigen::Matrix2cd density_matrix(const QubitState& s) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd rho;
    rho << 0.5 * (1.0 + s.z), 0.5 * (s.x - 1i * s.y),
           0.5 * (s.x + 1i * s.y), 0.5 * (1.0 - s.z);
    return rho;
}

QubitState state_from_matrix(const Eigen::Matrix2cd& rho) {
    double x = 2.0 * rho(1, 0).real();
    double y = 2.0 * rho(1, 0).imag();
    double z = (rho(0, 0) - rho(1, 1)).real();
    return state_from_bloch(x, y, z);
}

double von_neumann_entropy(const QubitState& state) {
    double r = std::min(state.r(), 1.0);
    double lp = clamp_eigenvalue((1.0 + r) / 2.0);
    double lm = clamp_eigenvalue((1.0 - r) / 2.0);
    return -xlogx(lp) - xlogx(lm);
}

double relative_entropy(const QubitState& rho, const QubitState& sigma) {
    double ra = rho.r();
    double rb = sigma.r();

    if (rb >= 1.0 - kPureTol) {
        // Pure reference: finite only when rho coincides with it.
        double dx = rho.x - sigma.x, dy = rho.y - sigma.y, dz = rho.z - sigma.z;
        if (std::sqrt(dx * dx + dy * dy + dz * dz) <= 1e-12) return 0.0;
        throw InfiniteRelativeEntropy("relative_entropy: reference state is pure and differs from rho");
    }

    // Tr[rho log sigma] = c0 + c1 (a . b_hat) with log sigma = c0 I + c1 (b_hat . pauli).
    double lp = (1.0 + rb) / 2.0;
    double lm = (1.0 - rb) / 2.0;
    double c0 = 0.5 * std::log(lp * lm);
    double c1 = 0.5 * std::log(lp / lm);
    double dot = rho.x * sigma.x + rho.y * sigma.y + rho.z * sigma.z;
    double proj = rb > 0.0 ? dot / rb : 0.0;

    double value = -von_neumann_entropy(rho) - c0 - c1 * proj;

    // The closed form can go epsilon-negative for nearly equal states.
    if (value < 0.0 && value > -1e-12) return 0.0;
    if (!std::isfinite(value)) {
        throw InfiniteRelativeEntropy("relative_entropy: divergent value for r(rho)=" + std::to_string(ra) +
                                      ", r(sigma)=" + std::to_string(rb));
    }
    return value;
}

namespace detail {

double log_ratio_over_r(double r) {
    if (r < 1e-4) {
        // log((1+r)/(1-r))/r = 2 (1 + r^2/3 + r^4/5 + ...)
        double r2 = r * r;
        return 2.0 * (1.0 + r2 / 3.0 + r2 * r2 / 5.0);
    }
    return (std::log1p(r) - std::log1p(-r)) / r;
}

double entropy_deficit(double r) {
    if (r <= 0.0) return 0.0;
    double up = r >= 1.0 ? 2.0 * std::log(2.0) : (1.0 + r) * std::log1p(r);
    double dn = r >= 1.0 ? 0.0 : (1.0 - r) * std::log1p(-r);
    return 0.5 * (up + dn);
}

} // namespace detail

} // namespace qthermo
