#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgeom/quat.hpp"
#include "qgeom/quaternionic.hpp"

namespace qgeom {

struct ChartEscape : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Affine chart of right-quaternionic projective space HP^n: q = (z_others) z_pivot^{-1}.
class HPn {
public:
    explicit HPn(int n);

    int n() const { return n_; }
    int dim() const { return 4 * n_; }

    // Unit representative (1, q)/|(1, q)| in R^{4n+4}, chart slot first.
    template <class T>
    Vec<T> section(const Vec<T>& q) const {
        using std::sqrt;
        Vec<T> z(4 * n_ + 4);
        T rho = sqrt(T(1.0) + q.squaredNorm());
        z.setZero();
        z[0] = T(1.0) / rho;
        z.tail(4 * n_) = q / rho;
        return z;
    }

    // Submersion metric: g(X, Y) = <hor ds X, hor ds Y>, hor removing the span of z, zi, zj, zk.
    template <class T>
    Mat<T> metric(const Vec<T>& q) const {
        const int d = dim();
        using std::sqrt;
        T rho2 = T(1.0) + q.squaredNorm();
        T rho = sqrt(rho2);
        Vec<T> z = section(q);
        // columns ds e_k = (0, e_k)/rho - z q_k / rho^2
        Mat<T> w(d + 4, d);
        w.setZero();
        for (int k = 0; k < d; ++k) {
            w.col(k) = z * (-q[k] / rho2);
            w(4 + k, k) += T(1.0) / rho;
        }
        // vertical basis z b, b in {1, i, j, k}, entrywise right multiplication
        Mat<T> v(d + 4, 4);
        for (int b = 0; b < 4; ++b) {
            Quat<T> u;
            if (b == 0) u.w = T(1.0);
            if (b == 1) u.x = T(1.0);
            if (b == 2) u.y = T(1.0);
            if (b == 3) u.z = T(1.0);
            for (int l = 0; l <= n_; ++l) {
                Quat<T> p = quat_at(z, l) * u;
                v(4 * l, b) = p.w;
                v(4 * l + 1, b) = p.x;
                v(4 * l + 2, b) = p.y;
                v(4 * l + 3, b) = p.z;
            }
        }
        Mat<T> c = v.transpose() * w;
        return w.transpose() * w - c.transpose() * c;
    }

    const std::array<MatD, 3>& frame_matrices() const { return frame_; }
    template <class T>
    QFrame<T> frame(const Vec<T>&) const { return lift_frame<T>(frame_); }

    // 1-form with grad^g = D + S^{xi0} in this chart: xi0 = -<q, dq>/(1 + |q|^2).
    template <class T>
    Vec<T> xi0(const Vec<T>& q) const { return q * (T(-1.0) / (T(1.0) + q.squaredNorm())); }

private:
    int n_;
    std::array<MatD, 3> frame_;
};

struct HPnMetric {
    const HPn* m;
    template <class T>
    Mat<T> operator()(const Vec<T>& q) const { return m->metric(q); }
};
struct HPnFrame {
    const HPn* m;
    template <class T>
    QFrame<T> operator()(const Vec<T>& q) const { return m->frame(q); }
};

// Closed form of the Levi-Civita connection: D + S^{xi0}.
struct HPnClosedLC {
    const HPn* m;
    int dim() const { return m->dim(); }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& q) const { return s_xi_tensor(m->xi0(q), m->frame(q)); }
};

// Levi-Civita connection obtained by differentiating the metric.
inline LeviCivita<HPnMetric> hpn_levi_civita(const HPn& m, DerivEngine eng = {}) {
    return levi_civita(m.dim(), HPnMetric{&m}, std::move(eng));
}
inline HPnClosedLC hpn_levi_civita_closed(const HPn& m) { return {&m}; }

// Circle action e^{i theta}[z] = [e^{i p_0 theta} z_0 : ... : e^{i p_n theta} z_n], seen in the chart `pivot`.
struct CircleAction {
    std::vector<int> weights;
    int pivot = 0;

    CircleAction() = default;
    CircleAction(std::vector<int> w, int p = 0);
    static CircleAction uniform(int n) { return CircleAction(std::vector<int>(n + 1, 1)); }

    int n() const { return int(weights.size()) - 1; }
    int homogeneous_index(int slot) const { return slot < pivot ? slot : slot + 1; }
    CircleAction in_chart(int p) const { return CircleAction(weights, p); }

    // X_j(q) = i p_j q_j - q_j i p_pivot
    template <class T>
    Vec<T> operator()(const Vec<T>& q) const {
        const int n_ = n();
        Vec<T> out(4 * n_);
        const double pp = weights[pivot];
        for (int j = 0; j < n_; ++j) {
            const double pj = weights[homogeneous_index(j)];
            Quat<T> a = quat_at(q, j);
            // i a and a i
            Quat<T> ia{-a.x, a.w, -a.z, a.y};
            Quat<T> ai{-a.x, a.w, a.z, -a.y};
            set_quat(out, j, Quat<T>(ia.w * pj - ai.w * pp, ia.x * pj - ai.x * pp, ia.y * pj - ai.y * pp,
                                     ia.z * pj - ai.z * pp));
        }
        return out;
    }
};

// ---- homogeneous coordinates ---------------------------------------------------------

HVecd to_homogeneous(const VecD& q, int pivot);
VecD to_chart(const HVecd& z, int pivot);  // throws ChartEscape
int best_pivot(const HVecd& z);
HVecd normalize_rep(const HVecd& z);
// sin of the angle between quaternionic lines: invariant under z -> z h.
double proj_distance(const HVecd& a, const HVecd& b);
HVecd act_homogeneous(const HVecd& z, const std::vector<int>& weights, double theta);
// Point e^{i theta}[q] in the same chart; throws ChartEscape if it leaves.
VecD act_point(const CircleAction& a, const VecD& q, double theta);

// ---- fixed point sets ------------------------------------------------------------------

enum class FixedKind { Isolated, Quaternionic, TransversalComplex };
std::string kind_name(FixedKind k);

struct FixedComponent {
    FixedKind kind = FixedKind::Isolated;
    int dim = 0;
    double fq_norm = 0.0;
    double fq_spread = 0.0;  // max - min of ||f_Q|| across witnesses
    std::vector<HVecd> witnesses;
};

struct FixedSearchOptions {
    int seeds = 200;
    std::uint64_t rng_seed = 1;
    double cluster_radius = 1e-3;
    double fq_tol = 1e-5;
    int max_iter = 60;
    double residual_tol = 1e-12;
};

struct FixedSearchResult {
    std::vector<FixedComponent> components;
    int failed_seeds = 0;
};

// Levenberg-Marquardt polish of |X|^2 = 0 in a chart; throws ConvergenceFailure.
VecD polish_fixed_point(const CircleAction& a, const VecD& q0, int max_iter = 60, double tol = 1e-12);

FixedSearchResult find_fixed_components(const HPn& m, const CircleAction& a, const FixedSearchOptions& opt = {});

// Kernel of a matrix (orthonormal columns) with relative threshold.
MatD kernel_basis(const MatD& a, double rel_tol = 1e-8);
// Principal angles (radians, ascending) between column spans.
VecD principal_angles(const MatD& a, const MatD& b);
// Orthonormal basis of the column span.
MatD orthonormal_span(const MatD& a, double rel_tol = 1e-10);

// ||A||_Q = sqrt((A, A))
inline double q_norm(const MatD& a, int n) { return std::sqrt(std::max(0.0, q_inner(a, a, n))); }

// (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k
template <class XF, class MetricF>
MatD lie_derivative_metric(const XF& xf, const MetricF& metric, const VecD& x, const DerivEngine& eng) {
    MatD jx = jacobian(xf, x, eng);
    MatD g = metric(x);
    MatD dg = directional_deriv(metric, x, VecD(xf(x)), eng);
    return dg + jx.transpose() * g + g * jx;
}

// Second fundamental form defect of a chart-linear submanifold with tangent basis tf:
// normal part of Gamma(Y, Z) for Y, Z in the span.
template <class C, class MetricF>
double totally_geodesic_defect(const C& conn, const MetricF& metric, const VecD& x, const MatD& tf) {
    Christoffel<double> g = conn.christoffel(x);
    MatD gm = metric(x);
    MatD gram = tf.transpose() * gm * tf;
    MatD proj = tf * gram.inverse() * tf.transpose() * gm;  // g-orthogonal projection onto TF
    MatD id = MatD::Identity(x.size(), x.size());
    double m = 0.0;
    for (int a = 0; a < tf.cols(); ++a)
        for (int b = 0; b < tf.cols(); ++b) {
            VecD v = g.apply(tf.col(a), tf.col(b));
            m = std::max(m, max_abs(VecD((id - proj) * v)));
        }
    return m;
}

}  // namespace qgeom
