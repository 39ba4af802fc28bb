#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qgeom/swann.hpp"

namespace qgeom {

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// mu°_1 = |u_1|^2 - |v_1|^2, mu°_2 + i mu°_3 = 2i u_1 v_1 (first homogeneous slot).
Triple mu_circ_hat(const SpherePoint& z);

// Max over samples of |mu°(e^{it} z) - mu°(z)| and of the fibre covariance
// (mu°_2 + i mu°_3)(z e^{it}) = e^{2it} (mu°_2 + i mu°_3)(z).
double mu_circ_invariance(const SpherePoint& z, double t);

// Random point of the zero set {t(u) v = 0, |u| = |v|} with |z| = 1.
template <class Rng>
SpherePoint sample_zero_set(int m, Rng& rng) {
    if (m < 2) throw DomainError("sample_zero_set: the zero set in H^1 is {0}");
    std::normal_distribution<double> nd(0.0, 1.0);
    CVec u(m), v(m);
    for (int l = 0; l < m; ++l) {
        u[l] = cplx(nd(rng), nd(rng));
        v[l] = cplx(nd(rng), nd(rng));
    }
    // t(u) v = <conj u, v>: remove the conj(u) component of v
    CVec cu = u.conjugate();
    v -= cu * (cu.dot(v) / cu.squaredNorm());
    v *= u.norm() / v.norm();
    double s = 1.0 / std::sqrt(u.squaredNorm() + v.squaredNorm());
    return {u * s, v * s};
}

// ---- Gr(2, m) = zero set / S^1 ---------------------------------------------------------

// Orthonormal basis of the plane span{u, conj v} of a zero-set point.
Eigen::MatrixXcd plane_of(const SpherePoint& z);
// Zero-set representative (u, conj v)/sqrt2 from an orthonormal 2-frame.
SpherePoint zero_set_point(const Eigen::MatrixXcd& frame);
Eigen::MatrixXcd plane_projector(const Eigen::MatrixXcd& y);
// Distance between planes: |P_a - P_b| (Frobenius).
double plane_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct GrFixedComponent {
    int dim = 0;                       // real dimension from the kernel rank on Hom(W, W^perp)
    bool contains_first_axis = false;  // e_1 in W
    bool orthogonal_first_axis = false;  // W in e_1^perp
    std::vector<Eigen::MatrixXcd> witnesses;
};
struct GrFixedResult {
    std::vector<GrFixedComponent> components;
    int failed_seeds = 0;
    double max_zero_set_residual = 0.0;  // representatives checked on the zero set
};
struct GrSearchOptions {
    int seeds = 200;
    std::uint64_t rng_seed = 1;
    double cluster_radius = 1e-3;
};
// Fixed planes of diag(e^{ip t}, e^{iq t}, ..., e^{iq t}) on Gr(2, m).
GrFixedResult weighted_fixed_sets_on_gr(int p, int q, int m, const GrSearchOptions& opt = {});

// ---- T* CP^{n-1} --------------------------------------------------------------------------

enum class Pairing { Bilinear, Hermitian };

struct LPoint {
    CVec z, w;
};
// |z|^2 - |w|^2 - 1 and the pairing of z and w
double lpoint_defect(const LPoint& p, Pairing pairing = Pairing::Bilinear);

template <class Rng>
LPoint sample_lpoint(int n, Rng& rng, Pairing pairing = Pairing::Bilinear) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CVec z(n), w(n);
    for (int l = 0; l < n; ++l) {
        z[l] = cplx(nd(rng), nd(rng));
        w[l] = n > 1 ? cplx(nd(rng), nd(rng)) : cplx(0.0);
    }
    CVec a = pairing == Pairing::Bilinear ? CVec(w.conjugate()) : w;
    if (a.squaredNorm() > 0.0) z -= a * (a.dot(z) / a.squaredNorm());
    z *= std::sqrt(1.0 + w.squaredNorm()) / z.norm();
    return {z, w};
}

// iota(z, w) = ((1, w), (0, z)); throws InvariantViolation if p is off L beyond 1e-8.
SpherePoint tcp_iota(const LPoint& p, Pairing pairing = Pairing::Bilinear);
// (z, w) -> (lambda z, conj(lambda) w)
LPoint rotate_lpoint(const LPoint& p, double t);

// min over t of the distance between e^{it} a and b (weights act on homogeneous slots)
double orbit_distance(const HVecd& a, const HVecd& b, const std::vector<int>& weights);

std::vector<int> tcp_weights(int n);  // (0, 1, ..., 1)

struct TcpReport {
    double well_defined = 0.0;     // max orbit distance between images of rotated L-points
    double min_separation = 1e300;  // min orbit distance between images of distinct orbits
    double commute = 0.0;          // weighted and diagonal actions commute
    int zero_section_rank = 0;
};
TcpReport tcp_phi_injectivity(int n, int samples, std::uint64_t seed);

// rank(J, orbit vector) - 1 at the zero-section point z
int zero_section_rank(const CVec& z);

}  // namespace qgeom
