#pragma once

#include <algorithm>
#include <concepts>
#include <vector>

#include "qgeom/engine.hpp"

namespace qgeom {

// slices[i](k, j) = Gamma^k_{ij}, so Gamma(X, Y) = sum_i X^i slices[i] Y.
template <class T>
struct Christoffel {
    std::vector<Mat<T>> slices;

    Christoffel() = default;
    explicit Christoffel(int dim) : slices(dim, Mat<T>::Zero(dim, dim)) {}

    int dim() const { return int(slices.size()); }
    Mat<T> along(const Vec<T>& x) const {
        Mat<T> m = Mat<T>::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i) m += slices[i] * x[i];
        return m;
    }
    Vec<T> apply(const Vec<T>& x, const Vec<T>& y) const { return along(x) * y; }

    friend Christoffel operator+(const Christoffel& a, const Christoffel& b) {
        Christoffel c = a;
        for (int i = 0; i < a.dim(); ++i) c.slices[i] += b.slices[i];
        return c;
    }
    friend Christoffel operator-(const Christoffel& a, const Christoffel& b) {
        Christoffel c = a;
        for (int i = 0; i < a.dim(); ++i) c.slices[i] -= b.slices[i];
        return c;
    }
    friend Christoffel operator*(const Christoffel& a, double s) {
        Christoffel c = a;
        for (auto& m : c.slices) m *= s;
        return c;
    }
};

template <class T>
Christoffel<T> tangent(const Christoffel<Dual<T>>& g) {
    Christoffel<T> out;
    out.slices.reserve(g.slices.size());
    for (const auto& m : g.slices) out.slices.push_back(tangent(m));
    return out;
}
template <class T>
Christoffel<double> values(const Christoffel<T>& g) {
    Christoffel<double> out;
    for (const auto& m : g.slices) out.slices.push_back(values(m));
    return out;
}

// A connection is any type with dim() and a templated christoffel(x).
template <class C>
concept Connection = requires(const C& c, const VecD& x) {
    { c.dim() } -> std::convertible_to<int>;
    { c.christoffel(x) } -> std::same_as<Christoffel<double>>;
};

struct FlatConnection {
    int d;
    int dim() const { return d; }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>&) const { return Christoffel<T>(d); }
};

// Wraps a generic callable x -> Christoffel<T>.
template <class F>
struct ChristoffelFn {
    int d;
    F fn;
    int dim() const { return d; }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& x) const { return fn(x); }
};
template <class F>
ChristoffelFn<F> make_connection(int dim, F fn) { return {dim, std::move(fn)}; }

// Levi-Civita connection of a metric field x -> g(x), by differentiating the metric.
template <class MetricF>
struct LeviCivita {
    int d;
    MetricF metric;
    DerivEngine eng;

    int dim() const { return d; }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& x) const {
        Mat<T> g = metric(x);
        std::vector<Mat<T>> dg(d);
        for (int k = 0; k < d; ++k) dg[k] = partial(metric, x, k, eng);
        Mat<T> ginv = inverse_spd(g);
        Christoffel<T> out(d);
        Mat<T> lower(d, d);
        for (int i = 0; i < d; ++i) {
            for (int l = 0; l < d; ++l)
                for (int j = 0; j < d; ++j) lower(l, j) = (dg[i](l, j) + dg[j](l, i) - dg[l](i, j)) * 0.5;
            out.slices[i] = ginv * lower;
        }
        return out;
    }
};
template <class MetricF>
LeviCivita<MetricF> levi_civita(int dim, MetricF metric, DerivEngine eng = {}) {
    return {dim, std::move(metric), std::move(eng)};
}

// Sum of a connection and a (1,2)-tensor field t(x) (a Christoffel-shaped difference tensor).
template <class Base, class DiffF>
struct ShiftedConnection {
    Base base;
    DiffF diff;
    int dim() const { return base.dim(); }
    template <class T>
    Christoffel<T> christoffel(const Vec<T>& x) const { return base.christoffel(x) + diff(x); }
};

// ---- covariant derivatives -------------------------------------------------

// nabla_X Y for a vector field Yf.
template <class C, class YF>
VecD covariant_deriv_vec(const C& conn, const YF& yf, const VecD& x, const VecD& dir, const DerivEngine& eng) {
    VecD dy = directional_deriv(yf, x, dir, eng);
    return dy + conn.christoffel(x).apply(dir, yf(x));
}

// nabla_X A for an endomorphism field Af.
template <class C, class AF, class T>
Mat<T> covariant_deriv_endo(const C& conn, const AF& af, const Vec<T>& x, const Vec<T>& dir,
                            const DerivEngine& eng) {
    Mat<T> da = directional_deriv(af, x, dir, eng);
    Mat<T> gx = conn.christoffel(x).along(dir);
    Mat<T> a = af(x);
    return da + gx * a - a * gx;
}

// Endomorphism Y -> nabla_Y X of a vector field Xf.
template <class C, class XF, class T>
Mat<T> nabla_field(const C& conn, const XF& xf, const Vec<T>& x, const DerivEngine& eng) {
    Mat<T> j = jacobian(xf, x, eng);
    Christoffel<T> g = conn.christoffel(x);
    Vec<T> v = xf(x);
    for (int i = 0; i < g.dim(); ++i) j.col(i) += g.slices[i] * v;
    return j;
}

// T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji}, as slices[i](k, j).
template <class T>
Christoffel<T> torsion_of(const Christoffel<T>& g) {
    const int d = g.dim();
    Christoffel<T> t(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) t.slices[i](k, j) = g.slices[i](k, j) - g.slices[j](k, i);
    return t;
}
template <class C>
double torsion_norm(const C& conn, const VecD& x) {
    double m = 0.0;
    for (const auto& s : torsion_of(conn.christoffel(x)).slices) m = std::max(m, max_abs(s));
    return m;
}

// (nabla_k g)_{ij} = d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il
template <class C, class MetricF>
double metricity_residual(const C& conn, const MetricF& metric, const VecD& x, const DerivEngine& eng) {
    Christoffel<double> g = conn.christoffel(x);
    MatD m = metric(x);
    double r = 0.0;
    for (int k = 0; k < g.dim(); ++k) {
        MatD dm = partial(metric, x, k, eng);
        MatD res = dm - g.slices[k].transpose() * m - m * g.slices[k];
        r = std::max(r, max_abs(res));
    }
    return r;
}

// ---- curvature ---------------------------------------------------------------

// Full curvature at a point: r[a][b] = R(e_a, e_b) as an endomorphism.
template <class T>
struct CurvatureTensor {
    int d = 0;
    std::vector<std::vector<Mat<T>>> r;

    Mat<T> operator()(int a, int b) const { return r[a][b]; }
    Mat<T> eval(const Vec<T>& x, const Vec<T>& y) const {
        Mat<T> m = Mat<T>::Zero(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (value_of(x[a]) != 0.0 && value_of(y[b]) != 0.0) m += r[a][b] * (x[a] * y[b]);
        return m;
    }
};

// R_{X,Y} = (d_X Gamma)_Y - (d_Y Gamma)_X + [Gamma_X, Gamma_Y]
template <class C, class T>
CurvatureTensor<T> curvature_tensor(const C& conn, const Vec<T>& x, const DerivEngine& eng) {
    const int d = conn.dim();
    auto gfield = [&conn](const auto& y) { return conn.christoffel(y); };
    Christoffel<T> g = conn.christoffel(x);
    std::vector<Christoffel<T>> dg(d);
    for (int c = 0; c < d; ++c) dg[c] = partial(gfield, x, c, eng);
    CurvatureTensor<T> out;
    out.d = d;
    out.r.assign(d, std::vector<Mat<T>>(d, Mat<T>::Zero(d, d)));
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Mat<T> m = dg[a].slices[b] - dg[b].slices[a] + g.slices[a] * g.slices[b] - g.slices[b] * g.slices[a];
            out.r[a][b] = m;
            out.r[b][a] = -m;
        }
    return out;
}

template <class C, class T>
Mat<T> curvature(const C& conn, const Vec<T>& x, const Vec<T>& u, const Vec<T>& v, const DerivEngine& eng) {
    auto gfield = [&conn](const auto& y) { return conn.christoffel(y); };
    Christoffel<T> g = conn.christoffel(x);
    Mat<T> du = directional_deriv(gfield, x, u, eng).along(v);
    Mat<T> dv = directional_deriv(gfield, x, v, eng).along(u);
    Mat<T> gu = g.along(u), gv = g.along(v);
    return du - dv + gu * gv - gv * gu;
}

// Ric(Y, Z) = tr(X -> R(X, Y) Z)
template <class T>
Mat<T> ricci(const CurvatureTensor<T>& r) {
    Mat<T> ric = Mat<T>::Zero(r.d, r.d);
    for (int k = 0; k < r.d; ++k)
        for (int j = 0; j < r.d; ++j) ric.row(j) += r.r[k][j].row(k);
    return ric;
}

// ---- Lie derivatives -----------------------------------------------------------

// (L_X A) = d_X A - (dX) A + A (dX)
template <class XF, class AF>
MatD lie_derivative_endo(const XF& xf, const AF& af, const VecD& x, const DerivEngine& eng) {
    MatD jx = jacobian(xf, x, eng);
    MatD a = af(x);
    MatD da = directional_deriv(af, x, xf(x), eng);
    return da - jx * a + a * jx;
}

// (L_X Gamma)^k_ij = X^m d_m G^k_ij + d_i d_j X^k - G^m_ij d_m X^k + G^k_mj d_i X^m + G^k_im d_j X^m
template <class C, class XF>
Christoffel<double> lie_derivative_connection(const C& conn, const XF& xf, const VecD& x, const DerivEngine& eng) {
    const int d = conn.dim();
    auto gfield = [&conn](const auto& y) { return conn.christoffel(y); };
    Christoffel<double> g = conn.christoffel(x);
    VecD xv = xf(x);
    Christoffel<double> out = directional_deriv(gfield, x, xv, eng);
    MatD jx = jacobian(xf, x, eng);
    for (int i = 0; i < d; ++i) {
        auto dxi = [&](const auto& y) { return partial(xf, y, i, eng); };
        MatD hess_i = jacobian(dxi, x, eng);  // (k, j) = d_j d_i X^k
        MatD& s = out.slices[i];
        s += hess_i;
        MatD gxi = MatD::Zero(d, d);
        for (int m = 0; m < d; ++m) gxi += g.slices[m] * jx(m, i);
        s += gxi + g.slices[i] * jx;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double t = 0.0;
                for (int m = 0; m < d; ++m) t += g.slices[i](m, j) * jx(k, m);
                out.slices[i](k, j) -= t;
            }
    return out;
}

}  // namespace qgeom
