#pragma once
#include <random>

#include <doctest.h>

#include "qgeom/quat.hpp"

namespace qt {

using namespace qgeom;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240917);
    return g;
}

inline double gauss() {
    static std::normal_distribution<double> nd(0.0, 1.0);
    return nd(rng());
}

inline VecD gauss_vec(int d, double s = 1.0) {
    VecD v(d);
    for (int i = 0; i < d; ++i) v[i] = s * gauss();
    return v;
}

inline Quatd gauss_quat() { return {gauss(), gauss(), gauss(), gauss()}; }

inline Quatd unit_quat() {
    Quatd q = gauss_quat();
    return q * (1.0 / std::sqrt(q.norm2()));
}

inline CVec gauss_cvec(int m, double s = 1.0) {
    CVec z(m);
    for (int l = 0; l < m; ++l) z[l] = cplx(s * gauss(), s * gauss());
    return z;
}

inline double qdiff(const Quatd& a, const Quatd& b) {
    return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace qt
