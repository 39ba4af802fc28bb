#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgeom/dual.hpp"

namespace qgeom {

template <class T> using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T> using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
using VecD = Vec<double>;
using MatD = Mat<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct StencilOutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_dim(long got, long want, const char* what) {
    if (got != want)
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(want) + ", got " +
                                std::to_string(got));
}

// Lift a double-valued vector into scalar type T.
template <class T>
Vec<T> lift(const VecD& x) {
    Vec<T> out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = T(x[i]);
    return out;
}
template <class T>
Mat<T> lift(const MatD& x) {
    Mat<T> out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.data()[i] = T(x.data()[i]);
    return out;
}

template <class T>
VecD values(const Vec<T>& x) {
    VecD out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = value_of(x[i]);
    return out;
}
template <class T>
MatD values(const Mat<T>& x) {
    MatD out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.data()[i] = value_of(x.data()[i]);
    return out;
}
inline double values(double x) { return x; }

// Inverse of a symmetric positive definite matrix by Cholesky, usable with dual scalars.
template <class T>
Mat<T> inverse_spd(const Mat<T>& a) {
    using std::sqrt;
    const Eigen::Index n = a.rows();
    Mat<T> l = Mat<T>::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        T s = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (!(value_of(s) > 0.0)) throw DomainError("inverse_spd: matrix not positive definite");
        l(j, j) = sqrt(s);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            T t = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    Mat<T> linv = Mat<T>::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        linv(j, j) = T(1.0) / l(j, j);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            T t(0.0);
            for (Eigen::Index k = j; k < i; ++k) t -= l(i, k) * linv(k, j);
            linv(i, j) = t / l(i, i);
        }
    }
    return linv.transpose() * linv;
}

inline double max_abs(const MatD& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const VecD& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace qgeom
