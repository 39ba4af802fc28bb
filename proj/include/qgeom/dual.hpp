#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives one extra
// derivative level per wrap; the outermost epsilon is always the newest seed.

#include <cmath>
#include <limits>
#include <type_traits>

#include <Eigen/Core>

namespace qgeom {

template <class T>
struct Dual {
    T v{};
    T d{};

    Dual() = default;
    Dual(const T& value) : v(value), d(0.0) {}
    Dual(const T& value, const T& tangent) : v(value), d(tangent) {}
    template <class U>
        requires(std::is_arithmetic_v<U> && !std::is_same_v<U, T>)
    Dual(U value) : v(static_cast<double>(value)), d(0.0) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
    Dual& operator*=(double s) { v *= s; d *= s; return *this; }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
    friend Dual operator+(const Dual& a) { return a; }
    friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T inv = T(1.0) / b.v;
        T q = a.v * inv;
        return {q, (a.d - q * b.d) * inv};
    }

    friend Dual operator+(const Dual& a, double s) { return {a.v + s, a.d}; }
    friend Dual operator+(double s, const Dual& a) { return {a.v + s, a.d}; }
    friend Dual operator-(const Dual& a, double s) { return {a.v - s, a.d}; }
    friend Dual operator-(double s, const Dual& a) { return {s - a.v, -a.d}; }
    friend Dual operator*(const Dual& a, double s) { return {a.v * s, a.d * s}; }
    friend Dual operator*(double s, const Dual& a) { return {a.v * s, a.d * s}; }
    friend Dual operator/(const Dual& a, double s) { return {a.v / s, a.d / s}; }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> bool operator<=(const Dual<T>& a, const Dual<T>& b) { return value_of(a) <= value_of(b); }
template <class T> bool operator>=(const Dual<T>& a, const Dual<T>& b) { return value_of(a) >= value_of(b); }
template <class T> bool operator==(const Dual<T>& a, const Dual<T>& b) { return a.v == b.v && a.d == b.d; }
template <class T> bool operator!=(const Dual<T>& a, const Dual<T>& b) { return !(a == b); }
template <class T> bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    T s = sqrt(x.v);
    return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    T e = exp(x.v);
    return {e, x.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
    using std::log;
    return {log(x.v), x.d / x.v};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {sin(x.v), x.d * cos(x.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {cos(x.v), -(x.d * sin(x.v))};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
    using std::cos;
    using std::tan;
    T c = cos(x.v);
    return {tan(x.v), x.d / (c * c)};
}
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
    using std::atan2;
    T r2 = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
template <class T>
Dual<T> abs(const Dual<T>& x) { return value_of(x) < 0.0 ? -x : x; }
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
    using std::pow;
    T base = pow(x.v, p - 1.0);
    return {base * x.v, x.d * (p * base)};
}
template <class T> bool isfinite(const Dual<T>& x) { return std::isfinite(value_of(x)); }
template <class T> bool isnan(const Dual<T>& x) { return std::isnan(value_of(x)); }
template <class T> bool isinf(const Dual<T>& x) { return std::isinf(value_of(x)); }
template <class T> Dual<T> conj(const Dual<T>& x) { return x; }
template <class T> Dual<T> real(const Dual<T>& x) { return x; }
template <class T> Dual<T> imag(const Dual<T>&) { return Dual<T>(0.0); }
template <class T> Dual<T> abs2(const Dual<T>& x) { return x * x; }

// Seeds a fresh outer epsilon.
template <class T>
Dual<T> seed(const T& value, const T& tangent) { return Dual<T>(value, tangent); }

}  // namespace qgeom

namespace Eigen {
template <class T>
struct NumTraits<qgeom::Dual<T>> : GenericNumTraits<qgeom::Dual<T>> {
    using Real = qgeom::Dual<T>;
    using NonInteger = qgeom::Dual<T>;
    using Literal = qgeom::Dual<T>;
    using Nested = qgeom::Dual<T>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2 * NumTraits<T>::ReadCost,
        AddCost = 2 * NumTraits<T>::AddCost,
        MulCost = 3 * NumTraits<T>::MulCost + NumTraits<T>::AddCost
    };
    static inline Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
    static inline Real dummy_precision() { return Real(1e-12); }
    static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
    static inline Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
    static inline int digits10() { return std::numeric_limits<double>::digits10; }
};

template <class T, typename BinaryOp>
struct ScalarBinaryOpTraits<qgeom::Dual<T>, double, BinaryOp> {
    using ReturnType = qgeom::Dual<T>;
};
template <class T, typename BinaryOp>
struct ScalarBinaryOpTraits<double, qgeom::Dual<T>, BinaryOp> {
    using ReturnType = qgeom::Dual<T>;
};
}  // namespace Eigen
