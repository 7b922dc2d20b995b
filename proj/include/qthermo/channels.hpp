#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/numerics.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

// Kraus representation: rho -> sum_k E_k rho E_k^dag with sum_k E_k^dag E_k = I.
struct KrausSet {
    std::vector<Eigen::Matrix2cd> ops;

    // sup-norm distance of sum E^dag E from the identity
    double completeness_defect() const;
};

// Validates the completeness invariant (tolerance 1e-12).
KrausSet make_kraus_set(std::vector<Eigen::Matrix2cd> ops);

// Affine action on Bloch vectors: r -> linear * r + shift.
struct BlochAffineMap {
    Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();
};

BlochAffineMap identity_map();

// a then b applied on top: compose(b, a) acts as b(a(r)).
BlochAffineMap compose(const BlochAffineMap& outer, const BlochAffineMap& inner);

Eigen::Vector3d apply_raw(const BlochAffineMap& map, const Eigen::Vector3d& r);
QubitState apply_map(const BlochAffineMap& map, const QubitState& state);

struct ChoiMatrix {
    Eigen::Matrix4cd m;

    double min_eigenvalue() const;
    double hermiticity_defect() const;
};

// Four-operator amplitude-damping family mixing relaxation toward both poles;
// p weights the |0><0| branch, gamma is the decay progress in [0, 1].
KrausSet kraus_gad(double p, double gamma);

QubitState apply_channel(const KrausSet& k, const QubitState& rho);

// Equivalent affine action on Bloch vectors of the same channel.
BlochAffineMap bloch_from_kraus(const KrausSet& k);

// Choi matrix in the unnormalized (trace 2) convention; PSD iff the map is CP.
ChoiMatrix choi_from(const BlochAffineMap& map);
ChoiMatrix choi_from(const KrausSet& k);

bool is_cp(const ChoiMatrix& c, double tol = 1e-10);

// True iff the image of the unit sphere stays inside the closed unit ball,
// checked on a deterministic grid of >= 10^4 points plus local refinement.
bool is_positive_map(const BlochAffineMap& map, double tol = 1e-9);

// Largest output norm over the unit sphere (the quantity is_positive_map thresholds).
double max_sphere_image_norm(const BlochAffineMap& map);

// V with lam_tau = V o lam_s; throws SingularMap when lam_s is not invertible
// (condition number above 1e12).
BlochAffineMap intertwiner(const BlochAffineMap& lam_tau, const BlochAffineMap& lam_s);

template <class Family>
BlochAffineMap intertwiner(Family&& family, double tau, double s) {
    if (!(s >= 0.0) || !(tau >= s)) {
        throw ParameterOutOfRange("intertwiner: need 0 <= s <= tau");
    }
    return intertwiner(family(tau), family(s));
}

// Haar-style random channel with a 2-dimensional environment, derived
// deterministically from (rng, index); always trace preserving.
KrausSet random_cptp_kraus(const CounterRng& rng, std::uint64_t index);

} // namespace qthermo
