#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "qgeom/linalg.hpp"

namespace qgeom {

// q = w + x i + y j + z k
template <class T>
struct Quat {
    T w{}, x{}, y{}, z{};

    Quat() : w(0.0), x(0.0), y(0.0), z(0.0) {}
    Quat(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

    friend Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend Quat operator*(const Quat& a, const T& s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
    friend Quat operator*(const T& s, const Quat& a) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
    Quat& operator+=(const Quat& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }

    T re() const { return w; }
    T norm2() const { return w * w + x * x + y * y + z * z; }
};

using Quatd = Quat<double>;

template <class T> Quat<T> conj(const Quat<T>& q) { return {q.w, -q.x, -q.y, -q.z}; }
template <class T> Quat<T> inverse(const Quat<T>& q) {
    T n = q.norm2();
    if (value_of(n) == 0.0) throw DomainError("quaternion inverse of zero");
    return conj(q) * (T(1.0) / n);
}
template <class T> T dot(const Quat<T>& a, const Quat<T>& b) { return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z; }

template <class T> Quat<T> unit_one() { return {T(1.0), T(0.0), T(0.0), T(0.0)}; }
template <class T> Quat<T> unit_i() { return {T(0.0), T(1.0), T(0.0), T(0.0)}; }
template <class T> Quat<T> unit_j() { return {T(0.0), T(0.0), T(1.0), T(0.0)}; }
template <class T> Quat<T> unit_k() { return {T(0.0), T(0.0), T(0.0), T(1.0)}; }
// i_1 = i, i_2 = j, i_3 = k
template <class T> Quat<T> imaginary_unit(int a) {
    return a == 0 ? unit_i<T>() : a == 1 ? unit_j<T>() : unit_k<T>();
}

template <class T> using HVec = std::vector<Quat<T>>;
using HVecd = HVec<double>;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

// Interleaved real embedding: entry l occupies slots 4l..4l+3 as (w, x, y, z).
template <class T>
Vec<T> embed_real(const HVec<T>& q) {
    Vec<T> out(4 * q.size());
    for (size_t l = 0; l < q.size(); ++l) {
        out[4 * l] = q[l].w;
        out[4 * l + 1] = q[l].x;
        out[4 * l + 2] = q[l].y;
        out[4 * l + 3] = q[l].z;
    }
    return out;
}
template <class T>
HVec<T> from_real(const Vec<T>& x) {
    if (x.size() % 4 != 0) throw DimensionMismatch("from_real: length not a multiple of 4");
    HVec<T> out(x.size() / 4);
    for (size_t l = 0; l < out.size(); ++l) out[l] = {x[4 * l], x[4 * l + 1], x[4 * l + 2], x[4 * l + 3]};
    return out;
}
template <class T>
Quat<T> quat_at(const Vec<T>& x, int l) { return {x[4 * l], x[4 * l + 1], x[4 * l + 2], x[4 * l + 3]}; }
template <class T>
void set_quat(Vec<T>& x, int l, const Quat<T>& q) {
    x[4 * l] = q.w;
    x[4 * l + 1] = q.x;
    x[4 * l + 2] = q.y;
    x[4 * l + 3] = q.z;
}

// q = u + j v with u, v complex vectors.
std::pair<CVec, CVec> split_complex(const HVecd& q);
HVecd join_complex(const CVec& u, const CVec& v);

// 4x4 real matrices of X -> X a and X -> a X on the (w,x,y,z) embedding.
template <class T>
Mat<T> right_mult_matrix(const Quat<T>& a) {
    Mat<T> m(4, 4);
    for (int c = 0; c < 4; ++c) {
        Quat<T> e;
        if (c == 0) e.w = T(1.0);
        if (c == 1) e.x = T(1.0);
        if (c == 2) e.y = T(1.0);
        if (c == 3) e.z = T(1.0);
        Quat<T> r = e * a;
        m(0, c) = r.w; m(1, c) = r.x; m(2, c) = r.y; m(3, c) = r.z;
    }
    return m;
}
template <class T>
Mat<T> left_mult_matrix(const Quat<T>& a) {
    Mat<T> m(4, 4);
    for (int c = 0; c < 4; ++c) {
        Quat<T> e;
        if (c == 0) e.w = T(1.0);
        if (c == 1) e.x = T(1.0);
        if (c == 2) e.y = T(1.0);
        if (c == 3) e.z = T(1.0);
        Quat<T> r = a * e;
        m(0, c) = r.w; m(1, c) = r.x; m(2, c) = r.y; m(3, c) = r.z;
    }
    return m;
}
// Block-diagonal versions on R^{4n}.
MatD right_mult_block(const Quatd& a, int n);
MatD left_mult_block(const Quatd& a, int n);

// Chart complex structures: I_a X = X conj(i_a). These satisfy I1 I2 = I3.
std::array<MatD, 3> standard_frame(int n);

}  // namespace qgeom
