#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qgeom/tensor.hpp"

namespace qgeom {

struct ZeroTwistor : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FrameDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct QFrame {
    std::array<Mat<T>, 3> I;
};

template <class T>
QFrame<T> lift_frame(const std::array<MatD, 3>& f) {
    return {{lift<T>(f[0]), lift<T>(f[1]), lift<T>(f[2])}};
}

// (A, B) = -tr(AB) / 4n
template <class T>
T q_inner(const Mat<T>& a, const Mat<T>& b, int n) {
    return -(a.cwiseProduct(b.transpose())).sum() / double(4 * n);
}

template <class T>
struct QSplit {
    Mat<T> q_part;
    Mat<T> z_part;
    std::array<T, 3> coeffs;
};

template <class T>
QSplit<T> q_project(const Mat<T>& a, const QFrame<T>& f, int n) {
    QSplit<T> s;
    s.q_part = Mat<T>::Zero(a.rows(), a.cols());
    for (int k = 0; k < 3; ++k) {
        s.coeffs[k] = q_inner(a, f.I[k], n);
        s.q_part += f.I[k] * s.coeffs[k];
    }
    s.z_part = a - s.q_part;
    return s;
}

// Largest commutator of the centraliser part with the frame; zero when A normalises Q.
inline double normalizer_defect(const MatD& z_part, const QFrame<double>& f) {
    double m = 0.0;
    for (const auto& i : f.I) m = std::max(m, max_abs(MatD(z_part * i - i * z_part)));
    return m;
}

// Quaternion relations and orthonormality of a frame.
inline double frame_defect(const QFrame<double>& f, int n) {
    const int d = int(f.I[0].rows());
    MatD id = MatD::Identity(d, d);
    double m = 0.0;
    for (int a = 0; a < 3; ++a) {
        m = std::max(m, max_abs(MatD(f.I[a] * f.I[a] + id)));
        int b = (a + 1) % 3, c = (a + 2) % 3;
        m = std::max(m, max_abs(MatD(f.I[a] * f.I[b] - f.I[c])));
        for (int e = 0; e < 3; ++e) m = std::max(m, std::abs(q_inner(f.I[a], f.I[e], n) - (a == e ? 1.0 : 0.0)));
    }
    return m;
}

// S^xi_X Y = xi(X)Y + xi(Y)X - sum_a [xi(I_a X) I_a Y + xi(I_a Y) I_a X], as Christoffel-shaped slices.
template <class T>
Christoffel<T> s_xi_tensor(const Vec<T>& xi, const QFrame<T>& f) {
    const int d = int(xi.size());
    std::array<Vec<T>, 3> eta;
    for (int a = 0; a < 3; ++a) eta[a] = f.I[a].transpose() * xi;
    Christoffel<T> s(d);
    for (int i = 0; i < d; ++i) {
        Mat<T>& m = s.slices[i];
        for (int k = 0; k < d; ++k) m(k, k) += xi[i];
        m.row(i) += xi.transpose();
        for (int a = 0; a < 3; ++a) {
            m -= f.I[a] * eta[a][i];
            m -= f.I[a].col(i) * eta[a].transpose();
        }
    }
    return s;
}

template <class T>
Vec<T> s_xi(const Vec<T>& xi, const QFrame<T>& f, const Vec<T>& x, const Vec<T>& y) {
    Vec<T> out = y * xi.dot(x) + x * xi.dot(y);
    for (int a = 0; a < 3; ++a) {
        Vec<T> ix = f.I[a] * x, iy = f.I[a] * y;
        out -= iy * xi.dot(ix) + ix * xi.dot(iy);
    }
    return out;
}

// nabla + S^xi for a 1-form field xi(x) and frame field frame(x).
template <class Base, class XiF, class FrameF>
struct ModifiedConnection {
    Base base;
    XiF xi;
    FrameF frame;
    int dim() const { return base.dim(); }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& x) const {
        return base.christoffel(x) + s_xi_tensor(Vec<T>(xi(x)), frame(x));
    }
};
template <class Base, class XiF, class FrameF>
ModifiedConnection<Base, XiF, FrameF> modify_connection(Base base, XiF xi, FrameF frame) {
    return {std::move(base), std::move(xi), std::move(frame)};
}

// Pi_h(theta)(X, Y) = (1/4)(theta(X,Y) + sum_a theta(I_a X, I_a Y))
inline MatD pi_h(const MatD& theta, const QFrame<double>& f) {
    MatD out = theta;
    for (const auto& i : f.I) out += i.transpose() * theta * i;
    return out * 0.25;
}

// B = Ric^a/(4(n+1)) + Ric^s/(4n) - Pi_h(Ric^s)/(2n(n+2))
inline MatD b_tensor(const MatD& ric, const QFrame<double>& f, int n) {
    MatD sym = 0.5 * (ric + ric.transpose());
    MatD asym = 0.5 * (ric - ric.transpose());
    return asym / (4.0 * (n + 1)) + sym / (4.0 * n) - pi_h(sym, f) / (2.0 * n * (n + 2));
}

// R^B_{X,Y} = S^{B(Y,.)}_X - S^{B(X,.)}_Y
inline CurvatureTensor<double> r_b(const MatD& b, const QFrame<double>& f) {
    const int d = int(b.rows());
    std::vector<Christoffel<double>> s(d);
    for (int a = 0; a < d; ++a) s[a] = s_xi_tensor(VecD(b.row(a).transpose()), f);
    CurvatureTensor<double> out;
    out.d = d;
    out.r.assign(d, std::vector<MatD>(d, MatD::Zero(d, d)));
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c) out.r[a][c] = s[c].slices[a] - s[a].slices[c];
    return out;
}

inline CurvatureTensor<double> weyl(const CurvatureTensor<double>& r, const QFrame<double>& f, int n) {
    CurvatureTensor<double> rb = r_b(b_tensor(ricci(r), f, n), f);
    CurvatureTensor<double> w = r;
    for (int a = 0; a < r.d; ++a)
        for (int c = 0; c < r.d; ++c) w.r[a][c] -= rb.r[a][c];
    return w;
}

inline double tensor_max_abs(const CurvatureTensor<double>& r) {
    double m = 0.0;
    for (const auto& row : r.r)
        for (const auto& e : row) m = std::max(m, max_abs(e));
    return m;
}

// Largest off-Q part of nabla_{e_k} I_a over coordinate directions: zero for a quaternionic connection.
template <class C, class FrameF>
double q_preservation_residual(const C& conn, const FrameF& frame, const VecD& x, int n, const DerivEngine& eng) {
    const int d = conn.dim();
    QFrame<double> f = frame(x);
    double m = 0.0;
    for (int a = 0; a < 3; ++a) {
        auto ia = [&frame, a](const auto& y) { return frame(y).I[a]; };
        for (int k = 0; k < d; ++k) {
            VecD e = VecD::Unit(d, k);
            MatD nab = covariant_deriv_endo(conn, ia, x, e, eng);
            m = std::max(m, max_abs(q_project(nab, f, n).z_part));
        }
    }
    return m;
}

// ---- twistor data --------------------------------------------------------------

// gauge: connection with parallel volume; mu(x): section of Q; frame(x): reference frame of Q.
template <class Gauge, class MuF, class FrameF>
struct TwistorDatum {
    Gauge gauge;
    MuF mu;
    FrameF frame;
    int n;
    DerivEngine eng;

    int dim() const { return 4 * n; }
    template <class T>
    T mu_norm(const Vec<T>& x) const {
        using std::sqrt;
        Mat<T> m = mu(x);
        return sqrt(q_inner(m, m, n));
    }
};
template <class Gauge, class MuF, class FrameF>
TwistorDatum<Gauge, MuF, FrameF> make_twistor(Gauge g, MuF mu, FrameF frame, int n, DerivEngine eng = {}) {
    return {std::move(g), std::move(mu), std::move(frame), n, std::move(eng)};
}

struct TwistorCheck {
    double residual = 0.0;     // ||c_b - xi o I_b|| for b = 2, 3
    double off_q = 0.0;        // non-Q part of nabla mu
    double norm_residual = 0.0;  // d||mu|| - xi o I with I = mu/||mu||
    VecD xi;
};

// Checks nabla mu = sum_a (xi o I_a) (x) I_a, reconstructing xi = -c_1 o I_1 with c_a(Y) = (nabla_Y mu, I_a).
template <class TD>
TwistorCheck check_twistor(const TD& td, const VecD& x) {
    const int d = td.dim();
    QFrame<double> f = td.frame(x);
    auto mu = [&td](const auto& y) { return td.mu(y); };
    std::array<VecD, 3> c;
    for (auto& v : c) v.resize(d);
    TwistorCheck out;
    for (int k = 0; k < d; ++k) {
        VecD e = VecD::Unit(d, k);
        MatD nab = covariant_deriv_endo(td.gauge, mu, x, e, td.eng);
        QSplit<double> s = q_project(nab, f, td.n);
        out.off_q = std::max(out.off_q, max_abs(s.z_part));
        for (int a = 0; a < 3; ++a) c[a][k] = s.coeffs[a];
    }
    out.xi = -(f.I[0].transpose() * c[0]);
    for (int b = 1; b < 3; ++b) out.residual = std::max(out.residual, max_abs(VecD(c[b] - f.I[b].transpose() * out.xi)));
    auto nrm = [&td](const auto& y) { return td.mu_norm(y); };
    VecD dn = gradient(nrm, x, td.eng);
    MatD unit = td.mu(x) / td.mu_norm(x);
    out.norm_residual = max_abs(VecD(dn - unit.transpose() * out.xi));
    return out;
}

// alpha = -1/2 d log ||mu||
template <class TD>
struct MuAlpha {
    const TD* td;
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const {
        using std::log;
        auto lognorm = [this](const auto& y) {
            using std::log;
            auto nm = td->mu_norm(y);
            if (value_of(nm) < 1e-8) throw ZeroTwistor("mu-connection: twistor datum vanishes");
            return log(nm);
        };
        return gradient(lognorm, x, td->eng) * -0.5;
    }
};

template <class TD>
struct MuConnection {
    const TD* td;
    int dim() const { return td->dim(); }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& x) const {
        Vec<T> alpha = MuAlpha<TD>{td}(x);
        return td->gauge.christoffel(x) + s_xi_tensor(alpha, td->frame(x));
    }
};
template <class TD>
MuConnection<TD> mu_connection(const TD& td) { return {&td}; }

// Completes a unit I in Q to (I, I2, I3) by Gram-Schmidt against the reference element least aligned with I.
template <class T>
QFrame<T> complete_frame(const Mat<T>& unit, const QFrame<T>& ref, int n) {
    using std::sqrt;
    int best = 0;
    double lowest = 2.0;
    for (int a = 0; a < 3; ++a) {
        double c = std::abs(value_of(q_inner(unit, ref.I[a], n)));
        if (c < lowest - 1e-12) {
            lowest = c;
            best = a;
        }
    }
    Mat<T> j = ref.I[best] - unit * q_inner(ref.I[best], unit, n);
    j = j / sqrt(q_inner(j, j, n));
    return {{unit, j, Mat<T>(unit * j)}};
}

// Frame adapted to the twistor datum: I1 = mu / ||mu||.
template <class TD>
struct AdaptedFrame {
    const TD* td;
    template <class T>
    QFrame<T> operator()(const Vec<T>& x) const {
        Mat<T> m = td->mu(x);
        return complete_frame(Mat<T>(m / td->mu_norm(x)), td->frame(x), td->n);
    }
};

// Connection 1-forms: nabla I_a = w_c (x) I_b - w_b (x) I_c for cyclic (a, b, c).
struct ConnectionForms {
    std::array<VecD, 3> w;
};
template <class C, class FrameF>
ConnectionForms connection_forms(const C& conn, const FrameF& frame, const VecD& x, int n, const DerivEngine& eng) {
    const int d = conn.dim();
    QFrame<double> f = frame(x);
    auto i1 = [&frame](const auto& y) { return frame(y).I[0]; };
    auto i2 = [&frame](const auto& y) { return frame(y).I[1]; };
    ConnectionForms out;
    for (auto& v : out.w) v.resize(d);
    for (int k = 0; k < d; ++k) {
        VecD e = VecD::Unit(d, k);
        MatD n1 = covariant_deriv_endo(conn, i1, x, e, eng);
        MatD n2 = covariant_deriv_endo(conn, i2, x, e, eng);
        out.w[2][k] = q_inner(n1, f.I[1], n);
        out.w[1][k] = -q_inner(n1, f.I[2], n);
        out.w[0][k] = q_inner(n2, f.I[2], n);
    }
    return out;
}

// eta = w_2 o I_2 + w_3 o I_3 for the frame field (whose first element is the structure I).
template <class C, class FrameF>
VecD eta_form(const C& conn, const FrameF& frame, const VecD& x, int n, const DerivEngine& eng) {
    QFrame<double> f = frame(x);
    ConnectionForms w = connection_forms(conn, frame, x, n, eng);
    return f.I[1].transpose() * w.w[1] + f.I[2].transpose() * w.w[2];
}

// Omega_a from [R_{X,Y}, I_a] = Omega_c I_b - Omega_b I_c; entries Omega_a(e_i, e_j).
inline std::array<MatD, 3> omega_forms(const CurvatureTensor<double>& r, const QFrame<double>& f, int n) {
    if (frame_defect(f, n) > 1e-6) throw FrameDegenerate("omega_forms: frame is not an orthonormal Q-frame");
    std::array<MatD, 3> om;
    for (auto& m : om) m = MatD::Zero(r.d, r.d);
    for (int i = 0; i < r.d; ++i)
        for (int j = 0; j < r.d; ++j) {
            const MatD& rij = r.r[i][j];
            MatD c1 = rij * f.I[0] - f.I[0] * rij;
            MatD c2 = rij * f.I[1] - f.I[1] * rij;
            om[2](i, j) = q_inner(c1, f.I[1], n);
            om[1](i, j) = -q_inner(c1, f.I[2], n);
            om[0](i, j) = q_inner(c2, f.I[2], n);
        }
    return om;
}

// Omega_a(X, Y) = 2 (B(X, I_a Y) - B(Y, I_a X))
inline std::array<MatD, 3> omega_from_b(const MatD& b, const QFrame<double>& f) {
    std::array<MatD, 3> om;
    for (int a = 0; a < 3; ++a) {
        MatD bi = b * f.I[a];
        om[a] = 2.0 * (bi - bi.transpose());
    }
    return om;
}

// (w ^ w)(X, Y, Z, W) for a 2-form w.
inline double wedge_square(const MatD& w, const VecD& x, const VecD& y, const VecD& z, const VecD& v) {
    auto f = [&w](const VecD& a, const VecD& b) { return a.dot(w * b); };
    return 2.0 * (f(x, y) * f(z, v) - f(x, z) * f(y, v) + f(x, v) * f(y, z));
}

inline double char4form(const std::array<MatD, 3>& om, const VecD& x, const VecD& y, const VecD& z, const VecD& v) {
    double s = 0.0;
    for (const auto& w : om) s += wedge_square(w, x, y, z, v);
    return s;
}

// Q-part f_Q of nabla X, for a vector field Xf.
template <class C, class XF, class FrameF>
struct FqField {
    C conn;
    XF xf;
    FrameF frame;
    int n;
    DerivEngine eng;
    template <class T>
    Mat<T> operator()(const Vec<T>& x) const {
        return q_project(nabla_field(conn, xf, x, eng), frame(x), n).q_part;
    }
};
template <class C, class XF, class FrameF>
FqField<C, XF, FrameF> fq_field(C conn, XF xf, FrameF frame, int n, DerivEngine eng = {}) {
    return {std::move(conn), std::move(xf), std::move(frame), n, std::move(eng)};
}

struct HessianCheck {
    double hessian_form = 0.0;    // |nabla_Y f_Q + (1/4n) sum tr(H_{Y, I_a .} X) I_a|
    double curvature_form = 0.0;  // |nabla_Y f_Q - (1/4n) sum tr(R_{X,Y} I_a) I_a|
};

// Three expressions for nabla f_Q: direct, via the Hessian of X, via curvature (needs L_X nabla = 0).
template <class C, class XF, class FrameF>
HessianCheck hessian_identity_check(const C& conn, const XF& xf, const FrameF& frame, const VecD& x, int n,
                                    const DerivEngine& eng) {
    const int d = conn.dim();
    QFrame<double> f = frame(x);
    auto fq = fq_field(conn, xf, frame, n, eng);
    auto nabx = [&](const auto& y) { return nabla_field(conn, xf, y, eng); };
    VecD xv = xf(x);
    HessianCheck out;
    for (int k = 0; k < d; ++k) {
        VecD e = VecD::Unit(d, k);
        MatD lhs = covariant_deriv_endo(conn, fq, x, e, eng);
        MatD hess = covariant_deriv_endo(conn, nabx, x, e, eng);
        MatD rxy = curvature(conn, x, xv, e, eng);
        MatD via_h = MatD::Zero(d, d), via_r = MatD::Zero(d, d);
        for (int a = 0; a < 3; ++a) {
            via_h -= f.I[a] * ((hess * f.I[a]).trace() / (4.0 * n));
            via_r += f.I[a] * ((rxy * f.I[a]).trace() / (4.0 * n));
        }
        out.hessian_form = std::max(out.hessian_form, max_abs(MatD(lhs - via_h)));
        out.curvature_form = std::max(out.curvature_form, max_abs(MatD(lhs - via_r)));
    }
    return out;
}

}  // namespace qgeom
