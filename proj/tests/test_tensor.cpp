#include "qgeom/hpn.hpp"
#include "qgeom/quadrature.hpp"
#include "test_util.hpp"

using namespace qt;

namespace {

const DerivEngine engines[] = {DerivEngine::dual(), DerivEngine::fd(1e-5)};

// g = e^{2 phi} delta with phi = -log(1 + |x|^2):
// Gamma^k_ij = delta_ik d_j phi + delta_jk d_i phi - delta_ij d_k phi
Christoffel<double> conformal_christoffel(const VecD& x) {
    const int d = int(x.size());
    VecD dphi = x * (-2.0 / (1.0 + x.squaredNorm()));
    Christoffel<double> g(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                g.slices[i](k, j) = (i == k ? dphi[j] : 0.0) + (j == k ? dphi[i] : 0.0) - (i == j ? dphi[k] : 0.0);
    return g;
}

struct RoundMetric {
    template <class T>
    Mat<T> operator()(const Vec<T>& x) const {
        T s = T(1.0) + x.squaredNorm();
        return Mat<T>::Identity(x.size(), x.size()) * (T(1.0) / (s * s));
    }
};

}  // namespace

TEST_CASE("directional derivatives") {
    VecD x = gauss_vec(4), y = gauss_vec(4), a = gauss_vec(4);
    for (const auto& eng : engines) {
        auto konst = [](const auto& z) { return z.sum() * 0.0 + 3.0; };
        CHECK(std::abs(directional_deriv(konst, x, y, eng)) == 0.0);
        auto lin = [&a](const auto& z) { return z.dot(lift<std::decay_t<decltype(z[0])>>(a)); };
        CHECK(std::abs(directional_deriv(lin, x, y, eng) - a.dot(y)) < 1e-9);
        auto sq = [](const auto& z) { return z.squaredNorm(); };
        VecD e1 = VecD::Unit(4, 0);
        CHECK(std::abs(directional_deriv(sq, e1, e1, eng) - 2.0) < 1e-9);
    }
}

TEST_CASE("derivatives are linear in the direction") {
    auto f = [](const auto& z) {
        using std::sin;
        return sin(z[0] * z[1]) + z[2] * z[2] * z[3];
    };
    for (int s = 0; s < 20; ++s) {
        VecD x = gauss_vec(4), u = gauss_vec(4), v = gauss_vec(4);
        const double a = gauss(), b = gauss();
        DerivEngine eng = DerivEngine::dual();
        double lhs = directional_deriv(f, x, VecD(a * u + b * v), eng);
        double rhs = a * directional_deriv(f, x, u, eng) + b * directional_deriv(f, x, v, eng);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
    }
}

TEST_CASE("finite differences refuse stencils outside the domain") {
    DerivEngine eng = DerivEngine::fd(1e-3);
    eng.domain = [](const VecD& z) { return z[0] > 0.0; };
    auto f = [](const auto& z) { return z[0]; };
    VecD x = VecD::Zero(2);
    CHECK_THROWS_AS(directional_deriv(f, x, VecD(VecD::Unit(2, 0)), eng), StencilOutOfDomain);
}

TEST_CASE("covariant derivative of vector fields") {
    FlatConnection flat{4};
    VecD x = gauss_vec(4), dir = gauss_vec(4), c = gauss_vec(4);
    auto konst = [&c](const auto& z) { return Vec<std::decay_t<decltype(z[0])>>(lift<std::decay_t<decltype(z[0])>>(c) + z * 0.0); };
    CHECK(max_abs(covariant_deriv_vec(flat, konst, x, dir, DerivEngine::dual())) == 0.0);
    auto ident = [](const auto& z) { return z; };
    CHECK(max_abs(VecD(covariant_deriv_vec(flat, ident, x, dir, DerivEngine::dual()) - dir)) < 1e-15);
}

TEST_CASE("covariant derivative of endomorphism fields") {
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    auto id = [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        return Mat<T>(Mat<T>::Identity(z.size(), z.size()));
    };
    MatD k = MatD::Random(4, 4);
    for (int s = 0; s < 10; ++s) {
        VecD x = gauss_vec(4, 0.7), dir = gauss_vec(4);
        CHECK(max_abs(covariant_deriv_endo(lc, id, x, dir, DerivEngine::dual())) < 1e-15);
        auto konst = [&k](const auto& z) {
            using T = std::decay_t<decltype(z[0])>;
            return Mat<T>(lift<T>(k) + Mat<T>::Zero(4, 4) * z[0]);
        };
        CHECK(max_abs(covariant_deriv_endo(FlatConnection{4}, konst, x, dir, DerivEngine::dual())) == 0.0);
        // product rule on random fields
        auto a = [](const auto& z) {
            using T = std::decay_t<decltype(z[0])>;
            Mat<T> r(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r(i, j) = z[i] * z[j] + z[(i + j) % 4] * double(i - j);
            return r;
        };
        auto b = [](const auto& z) {
            using T = std::decay_t<decltype(z[0])>;
            using std::cos;
            Mat<T> r(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r(i, j) = cos(z[i] - 2.0 * z[j]);
            return r;
        };
        auto ab = [&](const auto& z) { return decltype(a(z))(a(z) * b(z)); };
        DerivEngine eng = DerivEngine::dual();
        MatD lhs = covariant_deriv_endo(lc, ab, x, dir, eng);
        MatD rhs = covariant_deriv_endo(lc, a, x, dir, eng) * b(x) + a(x) * covariant_deriv_endo(lc, b, x, dir, eng);
        CHECK(max_abs(MatD(lhs - rhs)) < 1e-6);
    }
}

TEST_CASE("torsion") {
    VecD x = gauss_vec(3);
    auto sym = make_connection(3, [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        Christoffel<T> g(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) g.slices[i](k, j) = z[k] * double(i + j + 1);
        return g;
    });
    CHECK(torsion_norm(sym, x) == 0.0);

    Christoffel<double> g(2);
    g.slices[0](0, 1) = 1.0;  // Gamma^1_{12}
    Christoffel<double> t = torsion_of(g);
    CHECK(t.slices[0](0, 1) == 1.0);
    CHECK(t.slices[1](0, 0) == -1.0);
    CHECK(t.slices[0](0, 0) == 0.0);

    HPn m(1);
    for (int s = 0; s < 10; ++s) CHECK(torsion_norm(hpn_levi_civita(m), gauss_vec(4, 0.8)) < 1e-10);
}

TEST_CASE("Levi-Civita of a conformally flat metric matches the closed form") {
    auto lc = levi_civita(4, RoundMetric{});
    for (const auto& eng : engines) {
        lc.eng = eng;
        for (int s = 0; s < 10; ++s) {
            VecD x = gauss_vec(4, 0.8);
            Christoffel<double> a = lc.christoffel(x), b = conformal_christoffel(x);
            for (int i = 0; i < 4; ++i) CHECK(max_abs(MatD(a.slices[i] - b.slices[i])) < 1e-8);
        }
    }
}

TEST_CASE("parallel transport along a coordinate line agrees with the covariant derivative") {
    // Transport Y along x(t) = x0 + t e and compare the transported field's derivative with -Gamma(e, Y).
    auto lc = make_connection(4, [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        T s = T(1.0) + z.squaredNorm();
        Vec<T> dphi = z * (T(-2.0) / s);
        Christoffel<T> g(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    T v = T(0.0);
                    if (i == k) v += dphi[j];
                    if (j == k) v += dphi[i];
                    if (i == j) v -= dphi[k];
                    g.slices[i](k, j) = v;
                }
        return g;
    });
    VecD x0 = gauss_vec(4, 0.5), e = gauss_vec(4), y0 = gauss_vec(4);
    // RK4 for dY/dt = -Gamma(e, Y)
    auto rhs = [&](double t, const VecD& y) { return VecD(-lc.christoffel(VecD(x0 + t * e)).apply(e, y)); };
    auto transport = [&](double tau) {
        const int steps = 200;
        const double h = tau / steps;
        VecD y = y0;
        for (int s = 0; s < steps; ++s) {
            double t = s * h;
            VecD k1 = rhs(t, y), k2 = rhs(t + h / 2, y + h / 2 * k1), k3 = rhs(t + h / 2, y + h / 2 * k2),
                 k4 = rhs(t + h, y + h * k3);
            y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        return y;
    };
    // the coordinate field Y(x) = y0 has nabla_e Y = Gamma(e, y0); transported Y differs by that rate
    VecD rate = (transport(1e-3) - transport(-1e-3)) / 2e-3;
    auto konst = [&y0](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        return Vec<T>(lift<T>(y0) + z * 0.0);
    };
    VecD cov = covariant_deriv_vec(lc, konst, x0, e, DerivEngine::dual());
    CHECK(max_abs(VecD(rate + cov)) < 1e-5 * (1 + cov.norm()));
}

TEST_CASE("curvature") {
    FlatConnection flat{4};
    VecD x = gauss_vec(4);
    CurvatureTensor<double> r0 = curvature_tensor(flat, x, DerivEngine::dual());
    CHECK(tensor_max_abs(r0) == 0.0);
    CHECK(max_abs(ricci(r0)) == 0.0);

    HPn m(1);
    auto lc = hpn_levi_civita(m);
    for (int s = 0; s < 5; ++s) {
        VecD p = gauss_vec(4, 0.6), u = gauss_vec(4), v = gauss_vec(4), w = gauss_vec(4);
        DerivEngine eng = DerivEngine::dual();
        MatD ruv = curvature(lc, p, u, v, eng), rvu = curvature(lc, p, v, u, eng);
        CHECK(max_abs(MatD(ruv + rvu)) < 1e-12);
        // first Bianchi identity
        VecD cyc = ruv * w + curvature(lc, p, v, w, eng) * u + curvature(lc, p, w, u, eng) * v;
        CHECK(max_abs(cyc) < 1e-4);
        CurvatureTensor<double> rt = curvature_tensor(lc, p, eng);
        CHECK(max_abs(MatD(rt.eval(u, v) - ruv)) < 1e-10);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(max_abs(MatD(rt(a, b) + rt(b, a))) == 0.0);
    }
}

TEST_CASE("Ricci of the round 4-sphere of radius 1/2") {
    // g = (1 + |x|^2)^{-2} delta is the radius-1/2 sphere, so Ric = 3 / (1/4) g = 12 g.
    auto lc = levi_civita(4, RoundMetric{});
    for (int s = 0; s < 10; ++s) {
        VecD x = gauss_vec(4, 0.7);
        MatD ric = ricci(curvature_tensor(lc, x, DerivEngine::dual()));
        MatD g = RoundMetric{}(x);
        CHECK(max_abs(MatD(ric - 12.0 * g)) < 1e-3 * max_abs(MatD(12.0 * g)));
        CHECK(max_abs(MatD(ric - ric.transpose())) < 1e-4);
    }
}

TEST_CASE("Lie derivative of endomorphism fields") {
    auto id = [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        return Mat<T>(Mat<T>::Identity(z.size(), z.size()));
    };
    auto xf = [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        Vec<T> v(4);
        v << z[1] * z[2], -z[0], z[3] * z[3], z[0] + z[1];
        return v;
    };
    auto zero = [](const auto& z) { return decltype(z)(z * 0.0); };
    auto a = [](const auto& z) {
        using T = std::decay_t<decltype(z[0])>;
        Mat<T> r(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = z[i] * double(j + 1) - z[j];
        return r;
    };
    VecD x = gauss_vec(4);
    CHECK(max_abs(lie_derivative_endo(xf, id, x, DerivEngine::dual())) < 1e-15);
    CHECK(max_abs(lie_derivative_endo(zero, a, x, DerivEngine::dual())) == 0.0);
    // on a flat connection L_X A = nabla_X A - [nabla X, A]
    MatD lie = lie_derivative_endo(xf, a, x, DerivEngine::dual());
    MatD nx = nabla_field(FlatConnection{4}, xf, x, DerivEngine::dual());
    MatD rhs = covariant_deriv_endo(FlatConnection{4}, a, x, VecD(xf(x)), DerivEngine::dual()) - (nx * a(x) - a(x) * nx);
    CHECK(max_abs(MatD(lie - rhs)) < 1e-12);
}

TEST_CASE("surface integrals of 2-forms") {
    auto plane = [](const auto& st) { return st; };
    auto zero = [](const VecD&, const VecD&, const VecD&) { return 0.0; };
    auto area = [](const VecD&, const VecD& u, const VecD& v) { return u[0] * v[1] - u[1] * v[0]; };
    CHECK(integrate_2form(zero, plane, Rect{0, 1, 0, 1}, 8, 8) == 0.0);
    CHECK(std::abs(integrate_2form(area, plane, Rect{0, 1, 0, 1}, 8, 8) - 1.0) < 1e-14);

    // Fubini-Study area of CP^1 in the affine chart: dx ^ dy / (1 + |w|^2)^2 integrates to pi.
    auto polar = [](const auto& st) {
        using std::cos;
        using std::sin;
        using std::tan;
        using T = std::decay_t<decltype(st[0])>;
        Vec<T> p(2);
        T r = tan(st[0] * 0.5);
        p << r * cos(st[1]), r * sin(st[1]);
        return p;
    };
    auto fs = [](const VecD& p, const VecD& u, const VecD& v) {
        double s = 1.0 + p.squaredNorm();
        return (u[0] * v[1] - u[1] * v[0]) / (s * s);
    };
    double val = integrate_2form(fs, polar, Rect{0, M_PI, 0, 2 * M_PI}, 48, 48);
    CHECK(std::abs(val - M_PI) < 1e-3 * M_PI);
    auto bad = [](const VecD&, const VecD&, const VecD&) { return std::nan(""); };
    CHECK_THROWS_AS(integrate_2form(bad, plane, Rect{0, 1, 0, 1}, 2, 2), NonFinite);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    GaussRule r = gauss_legendre(5);
    double s0 = 0, s4 = 0, s8 = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        s0 += r.weights[i];
        s4 += r.weights[i] * std::pow(r.nodes[i], 4);
        s8 += r.weights[i] * std::pow(r.nodes[i], 8);
    }
    CHECK(std::abs(s0 - 2.0) < 1e-14);
    CHECK(std::abs(s4 - 2.0 / 5.0) < 1e-14);
    CHECK(std::abs(s8 - 2.0 / 9.0) < 1e-14);
}

TEST_CASE("dual numbers and finite differences agree on curvature") {
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    VecD x = gauss_vec(4, 0.5);
    CurvatureTensor<double> a = curvature_tensor(lc, x, DerivEngine::dual());
    CurvatureTensor<double> b = curvature_tensor(lc, x, DerivEngine::fd(1e-5));
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r = std::max(r, max_abs(MatD(a(i, j) - b(i, j))));
    CHECK(r < 1e-7);
}

TEST_CASE("positive definite inverse") {
    MatD a = MatD::Random(5, 5);
    MatD spd = a * a.transpose() + MatD::Identity(5, 5);
    CHECK(max_abs(MatD(inverse_spd(spd) * spd - MatD::Identity(5, 5))) < 1e-12);
    CHECK_THROWS_AS(inverse_spd(MatD(-MatD::Identity(3, 3))), DomainError);
}
