#pragma once

#include <cstdint>

#include "qgeom/hpn.hpp"
#include "qgeom/quadrature.hpp"

namespace qgeom {

// The projective line {[1 : w : 0 : ... : 0]} of F = CP^n in chart 0, w = tan(chi/2) e^{i phi},
// parametrized by (phi, chi), an I_1-oriented order.
struct LineCycle {
    int n;
    VecD operator()(const VecD& st) const;
    template <class T>
    Vec<T> operator()(const Vec<T>& st) const {
        using std::cos;
        using std::sin;
        using std::tan;
        Vec<T> q = Vec<T>::Zero(4 * n);
        T r = tan(st[1] * 0.5);
        q[0] = r * cos(st[0]);
        q[1] = r * sin(st[0]);
        return q;
    }
    Rect domain() const { return {0.0, 2.0 * M_PI, 0.0, M_PI}; }
};

// Gauge used for mu: mubar -> a mubar with a = exp(c |q|^2 / (1 + |q|^2)).
struct GaugeChange {
    double c = 0.0;
    template <class T>
    T factor(const Vec<T>& q) const {
        using std::exp;
        T s = q.squaredNorm();
        return exp(s / (1.0 + s) * c);
    }
    // xi = 1/2 d log a
    template <class T>
    Vec<T> operator()(const Vec<T>& q) const {
        T s = 1.0 + q.squaredNorm();
        return q * (c / (s * s));
    }
};

struct ChernOptions {
    int grid = 64;
    double scale = 1.0;  // constant multiple of mubar
    GaugeChange gauge;   // positive-function rescaling of mubar with compensating gauge
    DerivEngine eng;
};

// Twistor datum of the weights-(1,...,1) action: scale * a * f_Q with gauge D + S^xi0 + S^{1/2 d log a}.
struct ScaledMu {
    FqField<HPnClosedLC, CircleAction, HPnFrame> fq;
    GaugeChange a;
    double scale;
    template <class T>
    Mat<T> operator()(const Vec<T>& q) const {
        return fq(q) * (a.factor(q) * scale);
    }
};
using MuGauge = ModifiedConnection<HPnClosedLC, GaugeChange, HPnFrame>;
using MuDatum = TwistorDatum<MuGauge, ScaledMu, HPnFrame>;
MuDatum make_mu_datum(const HPn& m, const ChernOptions& opt = {});

// Ricci tensor of the connection induced on F = C^n (chart 0), entries on TF coordinates.
MatD ric_f(const HPn& m, const VecD& q, const DerivEngine& eng = {});
// Ricci tensor of the mu-connection of the weights-(1,...,1) twistor function, with the given gauge data.
MatD ric_mu(const HPn& m, const VecD& q, const ChernOptions& opt = {});
// mu / ||mu|| at q
MatD mu_unit(const HPn& m, const VecD& q, const ChernOptions& opt = {});

// int over the line of -(1/2 pi) Ric^F_I, Ric_I(X, Y) = Ric(X, I Y)
double c1_pairing_F(const HPn& m, const ChernOptions& opt = {});
// int over the line of -(1/2 pi) Ric^{mu}_I
double c1_pairing_M_restricted(const HPn& m, const ChernOptions& opt = {});

struct Theorem48Report {
    double c1_f = 0.0, c1_m = 0.0;
    double defect = 0.0;     // |2n c1_f - (n+1) c1_m| / |c1_m|
    double pointwise = 0.0;  // max |n Tr(R^F_{X,Y} I) - (n+1) Ric^mu(I X, Y)| at F samples
    double forms = 0.0;      // max |2n Ric^F_I - (n+1) Ric^mu_I| on TF at F samples
};
Theorem48Report theorem_4_8_check(const HPn& m, const ChernOptions& opt, int samples, std::uint64_t seed);

// max over samples of |n^2 Theta - Ric_I ^ Ric_I| / max(1, |Theta|), Theta = sum Omega_a ^ Omega_a
double char4form_consistency(const HPn& m, int samples, std::uint64_t seed, const DerivEngine& eng = {});

}  // namespace qgeom
