#include "qgeom/quotient.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qgeom {

namespace {
constexpr cplx I(0.0, 1.0);
using CMat = Eigen::MatrixXcd;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int k) : parent(k) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

CMat orthonormalize(const CMat& y) {
    Eigen::HouseholderQR<CMat> qr(y);
    return qr.householderQ() * CMat::Identity(y.rows(), y.cols());
}

CMat complement(const CMat& y) {
    Eigen::HouseholderQR<CMat> qr(y);
    CMat q = qr.householderQ();
    return q.rightCols(y.rows() - y.cols());
}

CMat weight_matrix(int p, int q, int m) {
    CMat d = CMat::Zero(m, m);
    d(0, 0) = double(p);
    for (int l = 1; l < m; ++l) d(l, l) = double(q);
    return d;
}

CMat unpack(const VecD& x, int m) {
    CMat y(m, 2);
    for (int c = 0; c < 2; ++c)
        for (int l = 0; l < m; ++l) y(l, c) = cplx(x[2 * (c * m + l)], x[2 * (c * m + l) + 1]);
    return y;
}

VecD commutator_residual(const CMat& d, const CMat& y) {
    CMat pr = plane_projector(y);
    CMat c = d * pr - pr * d;
    VecD r(2 * c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        r[2 * i] = c.data()[i].real();
        r[2 * i + 1] = c.data()[i].imag();
    }
    return r;
}

// Levenberg-Marquardt on [D, P(Y)] = 0 with a central-difference Jacobian.
bool polish_plane(const CMat& d, VecD& x, int max_iter = 80) {
    const int m = int(d.rows());
    auto res = [&](const VecD& v) { return commutator_residual(d, unpack(v, m)); };
    VecD r = res(x);
    double lambda = 1e-3;
    for (int it = 0; it < max_iter; ++it) {
        if (r.norm() < 1e-13) return true;
        MatD j(r.size(), x.size());
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            const double h = 1e-7;
            VecD xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            j.col(k) = (res(xp) - res(xm)) / (2.0 * h);
        }
        MatD jtj = j.transpose() * j;
        VecD g = j.transpose() * r;
        const double scale = std::max(jtj.diagonal().maxCoeff(), 1e-300);
        bool improved = false;
        for (int tries = 0; tries < 30 && !improved; ++tries) {
            MatD lhs = jtj + MatD::Identity(x.size(), x.size()) * (lambda * scale);
            VecD xn = x + lhs.ldlt().solve(-g);
            VecD rn = res(xn);
            if (rn.norm() < r.norm()) {
                x = xn;
                r = rn;
                lambda = std::max(lambda * 0.1, 1e-15);
                improved = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved) break;
    }
    return r.norm() < 1e-10;
}

// Real dimension of {A in Hom(W, W^perp) : D A = A D}.
int kernel_dim(const CMat& d, const CMat& y) {
    CMat f = complement(y);
    CMat a = f.adjoint() * d * f, b = y.adjoint() * d * y;
    const int k = int(f.cols());
    if (k == 0) return 0;
    CMat op = CMat::Zero(2 * k, 2 * k);
    for (int c = 0; c < 2; ++c) {
        op.block(c * k, c * k, k, k) += a;
        for (int c2 = 0; c2 < 2; ++c2) op.block(c2 * k, c * k, k, k) -= b(c, c2) * CMat::Identity(k, k);
    }
    Eigen::JacobiSVD<CMat> svd(op);
    const auto& s = svd.singularValues();
    int zero = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] < 1e-8 * std::max(1.0, s[0])) ++zero;
    return 2 * zero;
}

// Points of the Grassmann geodesic from a to b at t = 1/4, 1/2, 3/4 all commute with D.
bool geodesic_linked(const CMat& d, const CMat& a, const CMat& b) {
    CMat m = a.adjoint() * b;
    if (std::abs(m.determinant()) < 1e-6) return false;
    CMat h = (b - a * m) * m.inverse();
    Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    for (double t : {0.25, 0.5, 0.75}) {
        CMat c = CMat::Zero(2, 2), sn = CMat::Zero(2, 2);
        for (int i = 0; i < 2; ++i) {
            double th = std::atan(s[i]) * t;
            c(i, i) = std::cos(th);
            sn(i, i) = std::sin(th);
        }
        CMat y = a * svd.matrixV() * c + svd.matrixU() * sn;
        if (commutator_residual(d, orthonormalize(y)).norm() > 1e-9) return false;
    }
    return true;
}

}  // namespace

Triple mu_circ_hat(const SpherePoint& z) {
    cplx w = 2.0 * I * z.u[0] * z.v[0];
    return {std::norm(z.u[0]) - std::norm(z.v[0]), w.real(), w.imag()};
}

double mu_circ_invariance(const SpherePoint& z, double t) {
    Triple a = mu_circ_hat(z);
    Triple b = mu_circ_hat(left_act(z, std::vector<int>(z.size(), 1), t));
    Triple c = mu_circ_hat(fiber_rotate(z, t));
    cplx rot = std::polar(1.0, 2.0 * t) * cplx(a[1], a[2]);
    double r = std::abs(c[0] - a[0]) + std::abs(cplx(c[1], c[2]) - rot);
    for (int k = 0; k < 3; ++k) r = std::max(r, std::abs(b[k] - a[k]));
    return r;
}

CMat plane_of(const SpherePoint& z) {
    CMat y(z.size(), 2);
    y.col(0) = z.u;
    y.col(1) = z.v.conjugate();
    return orthonormalize(y);
}

SpherePoint zero_set_point(const CMat& frame) {
    const double s = 1.0 / std::sqrt(2.0);
    return {CVec(frame.col(0) * s), CVec(frame.col(1).conjugate() * s)};
}

CMat plane_projector(const CMat& y) { return y * (y.adjoint() * y).inverse() * y.adjoint(); }

double plane_distance(const CMat& a, const CMat& b) { return (plane_projector(a) - plane_projector(b)).norm(); }

GrFixedResult weighted_fixed_sets_on_gr(int p, int q, int m, const GrSearchOptions& opt) {
    if (p == q) throw DomainError("weighted_fixed_sets_on_gr: p == q acts trivially");
    if (std::gcd(p, q) != 1) throw DomainError("weighted_fixed_sets_on_gr: weights must be coprime");
    if (m < 2) throw DomainError("weighted_fixed_sets_on_gr: m >= 2");
    const CMat d = weight_matrix(p, q, m);
    std::mt19937_64 rng(opt.rng_seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    GrFixedResult res;
    std::vector<CMat> found;
    for (int s = 0; s < opt.seeds; ++s) {
        VecD x(4 * m);
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = nd(rng);
        if (!polish_plane(d, x)) {
            ++res.failed_seeds;
            continue;
        }
        CMat y = orthonormalize(unpack(x, m));
        ZeroSetLabel lab = classify(zero_set_point(y));
        res.max_zero_set_residual = std::max({res.max_zero_set_residual, std::abs(lab.pairing), std::abs(lab.norm_gap)});
        bool dup = false;
        for (const auto& f : found)
            if (plane_distance(f, y) < opt.cluster_radius * 1e-3) {
                dup = true;
                break;
            }
        if (!dup) found.push_back(y);
    }
    const int k = int(found.size());
    UnionFind uf(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (plane_distance(found[i], found[j]) < opt.cluster_radius || geodesic_linked(d, found[i], found[j]))
                uf.join(i, j);
    for (int r = 0; r < k; ++r) {
        if (uf.find(r) != r) continue;
        GrFixedComponent c;
        c.dim = -1;
        c.contains_first_axis = c.orthogonal_first_axis = true;
        for (int i = 0; i < k; ++i) {
            if (uf.find(i) != r) continue;
            c.witnesses.push_back(found[i]);
            c.dim = std::max(c.dim, kernel_dim(d, found[i]));
            const double e1 = found[i].row(0).squaredNorm();
            c.contains_first_axis = c.contains_first_axis && std::abs(e1 - 1.0) < 1e-8;
            c.orthogonal_first_axis = c.orthogonal_first_axis && e1 < 1e-8;
        }
        res.components.push_back(std::move(c));
    }
    std::stable_sort(res.components.begin(), res.components.end(),
                     [](const GrFixedComponent& a, const GrFixedComponent& b) { return a.dim > b.dim; });
    return res;
}

double lpoint_defect(const LPoint& p, Pairing pairing) {
    cplx pr = pairing == Pairing::Bilinear ? cplx((p.z.array() * p.w.array()).sum()) : p.z.dot(p.w);
    return std::max(std::abs(p.z.squaredNorm() - p.w.squaredNorm() - 1.0), std::abs(pr));
}

SpherePoint tcp_iota(const LPoint& p, Pairing pairing) {
    require_dim(p.w.size(), p.z.size(), "tcp_iota");
    if (lpoint_defect(p, pairing) > 1e-8) throw InvariantViolation("tcp_iota: point is not on L");
    const Eigen::Index n = p.z.size();
    CVec u(n + 1), v(n + 1);
    u[0] = 1.0;
    v[0] = 0.0;
    u.tail(n) = p.w;
    v.tail(n) = p.z;
    return {u, v};
}

LPoint rotate_lpoint(const LPoint& p, double t) {
    cplx l = std::polar(1.0, t);
    return {p.z * l, p.w * std::conj(l)};
}

double orbit_distance(const HVecd& a, const HVecd& b, const std::vector<int>& weights) {
    auto f = [&](double t) { return proj_distance(act_homogeneous(a, weights, t), b); };
    const int grid = 256;
    const double h = 2.0 * M_PI / grid;
    double best = 1e300, tb = 0.0;
    for (int i = 0; i < grid; ++i) {
        double v = f(i * h);
        if (v < best) {
            best = v;
            tb = i * h;
        }
    }
    // golden section on [tb - h, tb + h]
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = tb - h, hi = tb + h;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    return std::min({best, fc, fd});
}

std::vector<int> tcp_weights(int n) {
    std::vector<int> w(n + 1, 1);
    w[0] = 0;
    return w;
}

int zero_section_rank(const CVec& z) {
    const int n = int(z.size());
    VecD x(2 * n);
    for (int l = 0; l < n; ++l) {
        x[2 * l] = z[l].real();
        x[2 * l + 1] = z[l].imag();
    }
    // chart 0 image of [(1, 0) + j (0, z/|z|)]: q_l = j z_l
    auto img = [n](const auto& y) {
        using T = typename std::decay_t<decltype(y)>::Scalar;
        using std::sqrt;
        T r = sqrt(y.squaredNorm());
        Vec<T> q = Vec<T>::Zero(4 * n);
        for (int l = 0; l < n; ++l) {
            q[4 * l + 2] = y[2 * l] / r;
            q[4 * l + 3] = -y[2 * l + 1] / r;
        }
        return q;
    };
    MatD j = jacobian(img, x, DerivEngine{});
    // e^{it} j z = j e^{-it} z
    VecD o = VecD::Zero(4 * n);
    const double r = z.norm();
    for (int l = 0; l < n; ++l) {
        cplx dz = -I * z[l] / r;
        o[4 * l + 2] = dz.real();
        o[4 * l + 3] = -dz.imag();
    }
    MatD all(4 * n, 2 * n + 1);
    all << j, o;
    Eigen::JacobiSVD<MatD> svd(all);
    const VecD& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > 1e-8 * s[0]) ++rank;
    return rank - 1;
}

TcpReport tcp_phi_injectivity(int n, int samples, std::uint64_t seed) {
    if (n < 2) throw DomainError("tcp_phi_injectivity: L/S^1 is a point for n = 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::normal_distribution<double> nd(0.0, 1.0);
    const std::vector<int> w = tcp_weights(n);
    const std::vector<int> ones(n + 1, 1);
    TcpReport rep;
    for (int s = 0; s < samples; ++s) {
        LPoint a = sample_lpoint(n, rng), b = sample_lpoint(n, rng);
        HVecd fa = to_quaternions(tcp_iota(a));
        HVecd fr = to_quaternions(tcp_iota(rotate_lpoint(a, ang(rng))));
        HVecd fb = to_quaternions(tcp_iota(b));
        rep.well_defined = std::max(rep.well_defined, orbit_distance(fa, fr, w));
        rep.min_separation = std::min(rep.min_separation, orbit_distance(fa, fb, w));
        const double t1 = ang(rng), t2 = ang(rng);
        HVecd x = act_homogeneous(act_homogeneous(fa, w, t1), ones, t2);
        HVecd y = act_homogeneous(act_homogeneous(fa, ones, t2), w, t1);
        rep.commute = std::max(rep.commute, proj_distance(x, y));
    }
    CVec z(n);
    for (int l = 0; l < n; ++l) z[l] = cplx(nd(rng), nd(rng));
    rep.zero_section_rank = zero_section_rank(z);
    return rep;
}

}  // namespace qgeom
