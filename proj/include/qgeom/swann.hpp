#pragma once

#include <array>
#include <string>

#include "qgeom/hpn.hpp"

namespace qgeom {

// Point z = u + j v of H^{n+1} \ {0}, u, v in C^{n+1}.
struct SpherePoint {
    CVec u, v;
    double r2 = 0.0;

    SpherePoint() = default;
    SpherePoint(CVec u_, CVec v_);
    int size() const { return int(u.size()); }
    double r() const { return std::sqrt(r2); }
};

// Tangent vector (du, dv) at a SpherePoint.
struct SphereTangent {
    CVec du, dv;
};

SpherePoint from_homogeneous(const HVecd& z);
HVecd to_quaternions(const SpherePoint& z);

using Triple = std::array<double, 3>;

// theta_1 = Im sum(conj u du + conj v dv) / r^2
// theta_2 + i theta_3 = sum(u dv - v du) / r^2
Triple theta_forms(const SpherePoint& z, const SphereTangent& w);

// Left action e^{i p_l t} on z_l: (i p u, -i p v).
SphereTangent lifted_action_field(const std::vector<int>& weights, const SpherePoint& z);

// theta(X-hat) at z.
Triple mu_hat(const SpherePoint& z, const std::vector<int>& weights);

// z e^{i t} and e^{i p t} z
SpherePoint fiber_rotate(const SpherePoint& z, double t);
SpherePoint left_act(const SpherePoint& z, const std::vector<int>& weights, double t);

// G(a, b) = theta_a(z i_b): the forms on the fibre generators z i, z j, z k.
MatD fiber_gram(const SpherePoint& z);

struct Alignment {
    MatD rotation;  // orthogonal polar factor of the fibre Gram matrix
    double det = 0.0;
};
Alignment frame_alignment(const SpherePoint& z);

// Compares mu-hat at the chart section over pi(z) with f_Q of the Levi-Civita connection there.
struct LiftComparison {
    Triple lifted{}, aligned{}, downstairs{};
    double residual = 0.0;
    double fq_norm = 0.0;
    double det = 0.0;
    int pivot = 0;
    // Columns: the fibre directions of z itself in the chart frame, so rotation * mu_hat(z) = downstairs.
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
};
LiftComparison compare_with_downstairs(const HPn& m, const SpherePoint& z, const std::vector<int>& weights,
                                       const DerivEngine& eng = {});

enum class ZeroSetKind { OnZeroSet, PontecorvoDomain, OppositeDomain, Generic };
std::string zero_set_name(ZeroSetKind k);

struct ZeroSetLabel {
    ZeroSetKind label = ZeroSetKind::Generic;
    cplx pairing;     // t(u) v, bilinear
    double norm_gap;  // ||u|| - ||v||
};
// Tolerances are taken relative to r.
ZeroSetLabel classify(const SpherePoint& z, double tol = 1e-9);

// z_i = (u_i + v_i)/2, z_{n+1+i} = -(i/2)(u_i - v_i)
CVec coordinate_change(const CVec& u, const CVec& v);
struct CoordinateResiduals {
    double bilinear = 0.0;  // |t(z) z - t(u) v|
    double u_norm = 0.0;    // | ||u||^2 - ||z||^2 - 2 sum Im z_i conj z_{n+1+i} |
    double v_norm = 0.0;
};
CoordinateResiduals coordinate_change_check(const CVec& u, const CVec& v);

// d mu_a = -1/2 iota_X Omega_a - mu_c theta_b + mu_b theta_c, with mu_a = (f_Q, I_a), theta the connection
// forms of the frame and Omega its curvature forms. Returns the max residual over coordinate directions.
template <class C, class XF, class FrameF>
double check_eq_5_1(const C& conn, const XF& xf, const FrameF& frame, const VecD& x, int n, const DerivEngine& eng) {
    const int d = conn.dim();
    auto fq = fq_field(conn, xf, frame, n, eng);
    auto mubar = [&](const auto& y) {
        using T = typename std::decay_t<decltype(y)>::Scalar;
        auto f = frame(y);
        auto a = fq(y);
        Vec<T> out(3);
        for (int b = 0; b < 3; ++b) out[b] = q_inner(a, f.I[b], n);
        return out;
    };
    VecD mu = mubar(x);
    MatD dmu = jacobian(mubar, x, eng);
    auto om = omega_forms(curvature_tensor(conn, x, eng), frame(x), n);
    ConnectionForms th = connection_forms(conn, frame, x, n, eng);
    VecD xv = xf(x);
    double res = 0.0;
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        for (int k = 0; k < d; ++k) {
            double rhs = -0.5 * xv.dot(om[a].col(k)) - mu[c] * th.w[b][k] + mu[b] * th.w[c][k];
            res = std::max(res, std::abs(dmu(a, k) - rhs));
        }
    }
    return res;
}

}  // namespace qgeom
