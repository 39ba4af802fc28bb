#include "qgeom/swann.hpp"

#include <Eigen/SVD>

namespace qgeom {

namespace {
constexpr cplx I(0.0, 1.0);

cplx bilinear(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }
}  // namespace

SpherePoint::SpherePoint(CVec u_, CVec v_) : u(std::move(u_)), v(std::move(v_)) {
    require_dim(v.size(), u.size(), "SpherePoint");
    r2 = u.squaredNorm() + v.squaredNorm();
    if (!(r2 > 0.0)) throw DomainError("SpherePoint: z = 0");
}

SpherePoint from_homogeneous(const HVecd& z) {
    auto [u, v] = split_complex(z);
    return {u, v};
}

HVecd to_quaternions(const SpherePoint& z) { return join_complex(z.u, z.v); }

Triple theta_forms(const SpherePoint& z, const SphereTangent& w) {
    const double s = 1.0 / z.r2;
    cplx t1 = z.u.dot(w.du) + z.v.dot(w.dv);  // Eigen dot conjugates the first argument
    cplx t23 = bilinear(z.u, w.dv) - bilinear(z.v, w.du);
    return {t1.imag() * s, t23.real() * s, t23.imag() * s};
}

SphereTangent lifted_action_field(const std::vector<int>& weights, const SpherePoint& z) {
    require_dim(long(weights.size()), z.size(), "lifted_action_field: weights");
    SphereTangent w{CVec(z.size()), CVec(z.size())};
    for (int l = 0; l < z.size(); ++l) {
        w.du[l] = I * double(weights[l]) * z.u[l];
        w.dv[l] = -I * double(weights[l]) * z.v[l];
    }
    return w;
}

Triple mu_hat(const SpherePoint& z, const std::vector<int>& weights) {
    return theta_forms(z, lifted_action_field(weights, z));
}

SpherePoint fiber_rotate(const SpherePoint& z, double t) {
    cplx e = std::polar(1.0, t);
    return {z.u * e, z.v * e};
}

SpherePoint left_act(const SpherePoint& z, const std::vector<int>& weights, double t) {
    require_dim(long(weights.size()), z.size(), "left_act: weights");
    CVec u = z.u, v = z.v;
    for (int l = 0; l < z.size(); ++l) {
        cplx e = std::polar(1.0, weights[l] * t);
        u[l] *= e;
        v[l] *= std::conj(e);
    }
    return {u, v};
}

MatD fiber_gram(const SpherePoint& z) {
    // (u + jv) i = iu + j iv, (u + jv) j = -conj v + j conj u, (u + jv) k = i conj v - j i conj u
    std::array<SphereTangent, 3> gen = {SphereTangent{I * z.u, I * z.v},
                                        SphereTangent{-z.v.conjugate(), z.u.conjugate()},
                                        SphereTangent{I * z.v.conjugate(), -I * z.u.conjugate()}};
    MatD g(3, 3);
    for (int b = 0; b < 3; ++b) {
        Triple t = theta_forms(z, gen[b]);
        for (int a = 0; a < 3; ++a) g(a, b) = t[a];
    }
    return g;
}

Alignment frame_alignment(const SpherePoint& z) {
    MatD g = fiber_gram(z);
    Eigen::JacobiSVD<MatD> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Alignment a;
    a.rotation = svd.matrixU() * svd.matrixV().transpose();
    a.det = a.rotation.determinant();
    return a;
}

LiftComparison compare_with_downstairs(const HPn& m, const SpherePoint& z, const std::vector<int>& weights,
                                       const DerivEngine& eng) {
    const int n = m.n();
    require_dim(z.size(), n + 1, "compare_with_downstairs");
    LiftComparison out;
    HVecd zq = to_quaternions(z);
    out.pivot = best_pivot(zq);
    VecD q = to_chart(zq, out.pivot);
    SpherePoint s = from_homogeneous(normalize_rep(to_homogeneous(q, out.pivot)));
    out.lifted = mu_hat(s, weights);
    Alignment al = frame_alignment(s);
    out.det = al.det;
    // s = z h with h unit; mu_hat(z h) = sigma(conj(h) sigma(mu_hat(z)) h), sigma flipping the third entry
    HVecd sq = to_quaternions(s);
    Quatd h{0.0, 0.0, 0.0, 0.0};
    for (int l = 0; l <= n; ++l) h = h + conj(zq[l]) * sq[l];
    h = h * (1.0 / std::sqrt(h.norm2()));
    Eigen::Matrix3d transport;
    for (int b = 0; b < 3; ++b) {
        Quatd e{0.0, b == 0 ? 1.0 : 0.0, b == 1 ? 1.0 : 0.0, b == 2 ? -1.0 : 0.0};
        Quatd t = conj(h) * e * h;
        transport.col(b) = Eigen::Vector3d(t.x, t.y, -t.z);
    }
    out.rotation = al.rotation.transpose() * transport;
    Eigen::Vector3d lv(out.lifted[0], out.lifted[1], out.lifted[2]);
    Eigen::Vector3d av = al.rotation.transpose() * lv;
    CircleAction act(weights, out.pivot);
    auto fq = fq_field(hpn_levi_civita_closed(m), act, HPnFrame{&m}, n, eng);
    MatD f = fq(q);
    QFrame<double> fr = m.frame(q);
    out.fq_norm = q_norm(f, n);
    for (int a = 0; a < 3; ++a) {
        out.aligned[a] = av[a];
        out.downstairs[a] = q_inner(f, fr.I[a], n);
        out.residual = std::max(out.residual, std::abs(out.aligned[a] - out.downstairs[a]));
    }
    return out;
}

std::string zero_set_name(ZeroSetKind k) {
    switch (k) {
        case ZeroSetKind::OnZeroSet: return "on_zero_set";
        case ZeroSetKind::PontecorvoDomain: return "pontecorvo_domain";
        case ZeroSetKind::OppositeDomain: return "opposite_domain";
        case ZeroSetKind::Generic: return "generic";
    }
    return "unknown";
}

ZeroSetLabel classify(const SpherePoint& z, double tol) {
    ZeroSetLabel out;
    out.pairing = bilinear(z.u, z.v);
    out.norm_gap = z.u.norm() - z.v.norm();
    const double r = z.r();
    if (std::abs(out.pairing) >= tol * z.r2)
        out.label = ZeroSetKind::Generic;
    else if (std::abs(out.norm_gap) < tol * r)
        out.label = ZeroSetKind::OnZeroSet;
    else
        out.label = out.norm_gap > 0 ? ZeroSetKind::PontecorvoDomain : ZeroSetKind::OppositeDomain;
    return out;
}

CVec coordinate_change(const CVec& u, const CVec& v) {
    require_dim(v.size(), u.size(), "coordinate_change");
    const Eigen::Index m = u.size();
    CVec z(2 * m);
    z.head(m) = 0.5 * (u + v);
    z.tail(m) = -0.5 * I * (u - v);
    return z;
}

CoordinateResiduals coordinate_change_check(const CVec& u, const CVec& v) {
    CVec z = coordinate_change(u, v);
    const Eigen::Index m = u.size();
    double im = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) im += (z[i] * std::conj(z[m + i])).imag();
    const double zz = z.squaredNorm();
    CoordinateResiduals r;
    r.bilinear = std::abs(bilinear(z, z) - bilinear(u, v));
    r.u_norm = std::abs(u.squaredNorm() - zz - 2.0 * im);
    r.v_norm = std::abs(v.squaredNorm() - zz + 2.0 * im);
    return r;
}

}  // namespace qgeom
