#pragma once

#include <functional>
#include <string>

#include "qgeom/linalg.hpp"

namespace qgeom {

enum class EngineMode { CentralFd, Dual };

struct DerivEngine {
    EngineMode mode = EngineMode::Dual;
    double step = 1e-5;  // relative; actual h = step * (1 + |x|)
    std::function<bool(const VecD&)> domain;  // empty: whole chart

    static DerivEngine dual() { return {}; }
    static DerivEngine fd(double h = 1e-5) { return {EngineMode::CentralFd, h, {}}; }
};

EngineMode parse_engine(const std::string& name);
std::string engine_name(EngineMode m);

// tangent(): the outer-epsilon part of a dual-valued quantity.
template <class T> T tangent(const Dual<T>& x) { return x.d; }
template <class T>
Vec<T> tangent(const Vec<Dual<T>>& x) {
    Vec<T> out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i].d;
    return out;
}
template <class T>
Mat<T> tangent(const Mat<Dual<T>>& x) {
    Mat<T> out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.data()[i] = x.data()[i].d;
    return out;
}

template <class V>
V fd_combine(const V& plus, const V& minus, double scale) {
    return V((plus - minus) * scale);
}

template <class F, class T>
auto directional_deriv(const F& f, const Vec<T>& x, const Vec<T>& dir, const DerivEngine& eng) {
    if (eng.mode == EngineMode::Dual) {
        Vec<Dual<T>> xd(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) xd[i] = Dual<T>(x[i], dir[i]);
        return tangent(f(xd));
    }
    const double h = eng.step * (1.0 + values(x).norm());
    Vec<T> xp = x + dir * h;
    Vec<T> xm = x - dir * h;
    if (eng.domain && (!eng.domain(values(xp)) || !eng.domain(values(xm))))
        throw StencilOutOfDomain("finite-difference stencil leaves the chart domain");
    return fd_combine(f(xp), f(xm), 0.5 / h);
}

// Partial derivative along coordinate k.
template <class F, class T>
auto partial(const F& f, const Vec<T>& x, int k, const DerivEngine& eng) {
    Vec<T> e = Vec<T>::Zero(x.size());
    e[k] = T(1.0);
    return directional_deriv(f, x, e, eng);
}

// Gradient of a scalar field.
template <class F, class T>
Vec<T> gradient(const F& f, const Vec<T>& x, const DerivEngine& eng) {
    Vec<T> g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) g[k] = partial(f, x, int(k), eng);
    return g;
}

// Jacobian of a vector field: J(i, k) = d_k f^i.
template <class F, class T>
Mat<T> jacobian(const F& f, const Vec<T>& x, const DerivEngine& eng) {
    Mat<T> j;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        Vec<T> col = partial(f, x, int(k), eng);
        if (k == 0) j.resize(col.size(), x.size());
        j.col(k) = col;
    }
    return j;
}

}  // namespace qgeom
