#include "qthermo/channels.hpp"

#include <cmath>
#include <complex>

namespace qthermo {

namespace {

using cd = std::complex<double>;

const Eigen::Matrix2cd& pauli(int i) {
    static const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    static const Eigen::Matrix2cd sy = (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished();
    static const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    static const Eigen::Matrix2cd* table[3] = {&sx, &sy, &sz};
    return *table[i];
}

// Complex-linear extension of the affine Bloch action to arbitrary 2x2 inputs.
Eigen::Matrix2cd apply_to_matrix(const BlochAffineMap& map, const Eigen::Matrix2cd& in) {
    cd a0 = 0.5 * in.trace();
    Eigen::Matrix2cd out = a0 * Eigen::Matrix2cd::Identity();
    for (int i = 0; i < 3; ++i) {
        cd coeff = a0 * map.shift[i];
        for (int j = 0; j < 3; ++j) {
            cd aj = 0.5 * (pauli(j) * in).trace();
            coeff += map.linear(i, j) * aj;
        }
        out += coeff * pauli(i);
    }
    return out;
}

} // namespace

double KrausSet::completeness_defect() const {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (const auto& e : ops) acc += e.adjoint() * e;
    return (acc - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

KrausSet make_kraus_set(std::vector<Eigen::Matrix2cd> ops) {
    KrausSet k{std::move(ops)};
    if (k.ops.empty()) throw ParameterOutOfRange("make_kraus_set: empty operator list");
    double defect = k.completeness_defect();
    if (!(defect <= 1e-12)) {
        throw ParameterOutOfRange("make_kraus_set: completeness defect " + std::to_string(defect));
    }
    return k;
}

BlochAffineMap identity_map() {
    return BlochAffineMap{};
}

BlochAffineMap compose(const BlochAffineMap& outer, const BlochAffineMap& inner) {
    BlochAffineMap out;
    out.linear = outer.linear * inner.linear;
    out.shift = outer.linear * inner.shift + outer.shift;
    return out;
}

Eigen::Vector3d apply_raw(const BlochAffineMap& map, const Eigen::Vector3d& r) {
    return map.linear * r + map.shift;
}

QubitState apply_map(const BlochAffineMap& map, const QubitState& state) {
    Eigen::Vector3d out = apply_raw(map, Eigen::Vector3d(state.x, state.y, state.z));
    return state_from_bloch(out[0], out[1], out[2]);
}

double ChoiMatrix::min_eigenvalue() const {
    Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double ChoiMatrix::hermiticity_defect() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

KrausSet kraus_gad(double p, double gamma) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterOutOfRange("kraus_gad: p must lie in [0, 1], got " + std::to_string(p));
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ParameterOutOfRange("kraus_gad: gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
    double sp = std::sqrt(p);
    double sq = std::sqrt(1.0 - p);
    double sk = std::sqrt(1.0 - gamma);
    double sg = std::sqrt(gamma);
    std::vector<Eigen::Matrix2cd> ops(4, Eigen::Matrix2cd::Zero());
    ops[0](0, 0) = sp;
    ops[0](1, 1) = sp * sk;
    ops[1](0, 1) = sp * sg;
    ops[2](0, 0) = sq * sk;
    ops[2](1, 1) = sq;
    ops[3](1, 0) = sq * sg;
    return KrausSet{std::move(ops)};
}

QubitState apply_channel(const KrausSet& k, const QubitState& rho) {
    Eigen::Matrix2cd in = density_matrix(rho);
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& e : k.ops) out += e * in * e.adjoint();
    return state_from_matrix(out);
}

BlochAffineMap bloch_from_kraus(const KrausSet& k) {
    auto channel = [&k](const Eigen::Matrix2cd& in) {
        Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
        for (const auto& e : k.ops) out += e * in * e.adjoint();
        return out;
    };
    BlochAffineMap map;
    Eigen::Matrix2cd img_id = channel(Eigen::Matrix2cd::Identity());
    for (int i = 0; i < 3; ++i) {
        map.shift[i] = 0.5 * (pauli(i) * img_id).trace().real();
        for (int j = 0; j < 3; ++j) {
            map.linear(i, j) = 0.5 * (pauli(i) * channel(pauli(j))).trace().real();
        }
    }
    return map;
}

ChoiMatrix choi_from(const BlochAffineMap& map) {
    ChoiMatrix c;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
            unit(i, j) = 1.0;
            c.m.block<2, 2>(2 * i, 2 * j) = apply_to_matrix(map, unit);
        }
    }
    return c;
}

ChoiMatrix choi_from(const KrausSet& k) {
    ChoiMatrix c;
    c.m.setZero();
    for (const auto& e : k.ops) {
        // |v> = sum_i |i> (x) E|i>
        Eigen::Vector4cd v;
        v << e(0, 0), e(1, 0), e(0, 1), e(1, 1);
        c.m += v * v.adjoint();
    }
    return c;
}

bool is_cp(const ChoiMatrix& c, double tol) {
    return c.min_eigenvalue() >= -tol;
}

double max_sphere_image_norm(const BlochAffineMap& map) {
    auto norm_at = [&map](double ct, double phi) {
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        Eigen::Vector3d u(st * std::cos(phi), st * std::sin(phi), ct);
        return apply_raw(map, u).norm();
    };

    // Deterministic Fibonacci lattice over the sphere.
    constexpr int kGrid = 10000;
    const double golden_step = 2.0 * M_PI * 0.6180339887498949;
    double best = -1.0, best_ct = 1.0, best_phi = 0.0;
    for (int k = 0; k < kGrid; ++k) {
        double ct = 1.0 - 2.0 * (k + 0.5) / kGrid;
        double phi = std::fmod(golden_step * k, 2.0 * M_PI);
        double v = norm_at(ct, phi);
        if (v > best) {
            best = v;
            best_ct = ct;
            best_phi = phi;
        }
    }

    // Local pattern search around the best lattice point.
    double theta = std::acos(std::clamp(best_ct, -1.0, 1.0));
    double phi = best_phi;
    double step = 2.0e-2;
    while (step > 1e-9) {
        bool improved = false;
        const double cand[4][2] = {{theta + step, phi}, {theta - step, phi},
                                   {theta, phi + step}, {theta, phi - step}};
        for (const auto& c : cand) {
            double v = norm_at(std::cos(c[0]), c[1]);
            if (v > best) {
                best = v;
                theta = c[0];
                phi = c[1];
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

bool is_positive_map(const BlochAffineMap& map, double tol) {
    return max_sphere_image_norm(map) <= 1.0 + tol;
}

BlochAffineMap intertwiner(const BlochAffineMap& lam_tau, const BlochAffineMap& lam_s) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(lam_s.linear,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Copying the spectrum out sidesteps a gcc maybe-uninitialized false
    // positive on Eigen's internal storage.
    const Eigen::Vector3d sv = svd.singularValues();
    double smax = sv(0);
    double smin = sv(2);
    if (!(smin > 0.0) || smax / smin > 1e12) {
        throw SingularMap("intertwiner: reference map is singular (condition number " +
                          std::to_string(smin > 0.0 ? smax / smin : INFINITY) + ")");
    }
    Eigen::Matrix3d inv = svd.solve(Eigen::Matrix3d::Identity());
    BlochAffineMap out;
    out.linear = lam_tau.linear * inv;
    out.shift = lam_tau.shift - out.linear * lam_s.shift;
    return out;
}

KrausSet random_cptp_kraus(const CounterRng& rng, std::uint64_t index) {
    // Random 4x2 complex Gaussian, orthonormalized into an isometry.
    Eigen::Matrix<cd, 4, 2> g;
    std::uint64_t slot = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            double re = rng.normal(index, slot++);
            double im = rng.normal(index, slot++);
            g(i, j) = cd(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix<cd, 4, 2>> qr(g);
    Eigen::Matrix<cd, 4, 2> iso =
        qr.householderQ() * Eigen::Matrix<cd, 4, 2>::Identity();

    std::vector<Eigen::Matrix2cd> ops(2);
    for (int env = 0; env < 2; ++env) {
        ops[static_cast<std::size_t>(env)] =
            (Eigen::Matrix2cd() << iso(2 * env, 0), iso(2 * env, 1),
                                   iso(2 * env + 1, 0), iso(2 * env + 1, 1)).finished();
    }
    return make_kraus_set(std::move(ops));
}

} // namespace qthermo
