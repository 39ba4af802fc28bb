#include "qgeom/chern.hpp"
#include "test_util.hpp"

using namespace qt;

namespace {

QFrame<double> std_frame(int n) { return lift_frame<double>(standard_frame(n)); }

struct ConstFrame {
    int n;
    template <class T>
    QFrame<T> operator()(const Vec<T>&) const { return lift_frame<T>(standard_frame(n)); }
};

struct ZeroXi {
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const { return Vec<T>(x * 0.0); }
};

struct SomeXi {
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const {
        using std::sin;
        Vec<T> out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = sin(x[(i + 1) % x.size()]) * 0.3 + x[i] * x[0] * 0.1;
        return out;
    }
};

struct ZeroField {
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const { return Vec<T>(x * 0.0); }
};

struct NegXi {
    SomeXi base;
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const { return Vec<T>(-base(x)); }
};

double christoffel_gap(const Christoffel<double>& a, const Christoffel<double>& b) {
    double r = 0.0;
    for (int i = 0; i < a.dim(); ++i) r = std::max(r, max_abs(MatD(a.slices[i] - b.slices[i])));
    return r;
}

}  // namespace

TEST_CASE("S^xi tensor") {
    for (int n : {1, 2}) {
        const int d = 4 * n;
        QFrame<double> f = std_frame(n);
        VecD x = gauss_vec(d), y = gauss_vec(d);
        CHECK(max_abs(s_xi(VecD(VecD::Zero(d)), f, x, y)) == 0.0);
        // the slices agree with the pointwise formula
        VecD xi = gauss_vec(d);
        CHECK(max_abs(VecD(s_xi_tensor(xi, f).apply(x, y) - s_xi(xi, f, x, y))) < 1e-13);
        // Tr(Y -> S^xi_X Y) = 4(n+1) xi(X)
        for (int s = 0; s < 10; ++s) {
            VecD xi2 = gauss_vec(d), x2 = gauss_vec(d);
            MatD sx = s_xi_tensor(xi2, f).along(x2);
            CHECK(std::abs(sx.trace() - 4.0 * (n + 1) * xi2.dot(x2)) < 1e-12 * (1 + std::abs(sx.trace())));
        }
    }
    // flat H, xi = dx^1, X = Y = e_1: only xi(X) Y + xi(Y) X survives
    VecD e1 = VecD::Unit(4, 0);
    CHECK(max_abs(VecD(s_xi(e1, std_frame(1), e1, e1) - 2.0 * e1)) == 0.0);
}

TEST_CASE("modified connections") {
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    VecD x = gauss_vec(4, 0.6);
    auto same = modify_connection(lc, ZeroXi{}, HPnFrame{&m});
    CHECK(christoffel_gap(same.christoffel(x), lc.christoffel(x)) == 0.0);
    auto there = modify_connection(lc, SomeXi{}, HPnFrame{&m});
    auto back = modify_connection(there, NegXi{}, HPnFrame{&m});
    CHECK(christoffel_gap(back.christoffel(x), lc.christoffel(x)) < 1e-12);
    for (int s = 0; s < 10; ++s) {
        VecD p = gauss_vec(4, 0.6);
        CHECK(q_preservation_residual(there, HPnFrame{&m}, p, 1, DerivEngine::dual()) < 1e-5);
        CHECK(torsion_norm(there, p) < 1e-15);
    }
}

TEST_CASE("inner product on endomorphisms") {
    for (int n : {1, 2}) {
        QFrame<double> f = std_frame(n);
        CHECK(std::abs(q_inner(f.I[0], f.I[0], n) - 1.0) < 1e-15);
        CHECK(std::abs(q_inner(f.I[0], f.I[1], n)) < 1e-15);
        MatD a = MatD::Random(4 * n, 4 * n), b = MatD::Random(4 * n, 4 * n);
        CHECK(std::abs(q_inner(a, b, n) - q_inner(b, a, n)) < 1e-14);
        CHECK(frame_defect(f, n) < 1e-15);
    }
}

TEST_CASE("projection onto Q and its centraliser") {
    const int n = 2, d = 8;
    QFrame<double> f = std_frame(n);
    QSplit<double> s = q_project(f.I[1], f, n);
    CHECK(max_abs(MatD(s.q_part - f.I[1])) < 1e-15);
    CHECK(max_abs(s.z_part) < 1e-15);
    MatD id = MatD::Identity(d, d);
    QSplit<double> t = q_project(id, f, n);
    CHECK(max_abs(t.q_part) < 1e-15);
    CHECK(max_abs(MatD(t.z_part - id)) < 1e-15);
    // A = sum c_a I_a + (left multiplication, central for Q): split recovers both
    MatD z = left_mult_block(Quatd(0.3, -1.0, 0.5, 2.0), n);
    MatD a = 0.7 * f.I[0] - 1.1 * f.I[2] + z;
    QSplit<double> u = q_project(a, f, n);
    CHECK(max_abs(MatD(u.q_part - (0.7 * f.I[0] - 1.1 * f.I[2]))) < 1e-14);
    CHECK(normalizer_defect(u.z_part, f) < 1e-14);
}

TEST_CASE("quaternion-Hermitian averaging") {
    for (int n : {1, 2}) {
        const int d = 4 * n;
        QFrame<double> f = std_frame(n);
        MatD g = MatD::Identity(d, d);
        CHECK(max_abs(MatD(pi_h(g, f) - g)) < 1e-15);
        MatD th = MatD::Random(d, d);
        MatD p = pi_h(th, f);
        CHECK(max_abs(MatD(pi_h(p, f) - p)) < 1e-12);
        // a (x) a by the four-term sum
        VecD a = VecD::Unit(d, 0);
        MatD aa = a * a.transpose();
        MatD direct = aa;
        for (int b = 0; b < 3; ++b) {
            VecD ia = f.I[b].transpose() * a;
            direct += ia * ia.transpose();
        }
        CHECK(max_abs(MatD(pi_h(aa, f) - 0.25 * direct)) < 1e-15);
    }
}

TEST_CASE("B tensor and Weyl curvature") {
    for (int n : {1, 2}) {
        const int d = 4 * n;
        QFrame<double> f = std_frame(n);
        CHECK(max_abs(b_tensor(MatD::Zero(d, d), f, n)) == 0.0);
        CurvatureTensor<double> flat = curvature_tensor(FlatConnection{d}, gauss_vec(d), DerivEngine::dual());
        CHECK(tensor_max_abs(weyl(flat, f, n)) == 0.0);
        auto om = omega_forms(flat, f, n);
        for (const auto& w : om) CHECK(max_abs(w) == 0.0);
    }
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    for (int s = 0; s < 5; ++s) {
        VecD x = gauss_vec(4, 0.6);
        CurvatureTensor<double> r = curvature_tensor(lc, x, DerivEngine::dual());
        CHECK(tensor_max_abs(weyl(r, m.frame(x), 1)) < 1e-3);
        // Weyl is unchanged under nabla -> nabla + S^xi
        auto shifted = modify_connection(lc, SomeXi{}, HPnFrame{&m});
        CurvatureTensor<double> r2 = curvature_tensor(shifted, x, DerivEngine::dual());
        CurvatureTensor<double> w1 = weyl(r, m.frame(x), 1), w2 = weyl(r2, m.frame(x), 1);
        double gap = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) gap = std::max(gap, max_abs(MatD(w1(i, j) - w2(i, j))));
        CHECK(gap < 1e-3);
    }
}

TEST_CASE("curvature forms from B agree with the commutator definition on HP^n") {
    HPn m(2);
    auto lc = hpn_levi_civita_closed(m);
    VecD x = gauss_vec(8, 0.5);
    CurvatureTensor<double> r = curvature_tensor(lc, x, DerivEngine::dual());
    QFrame<double> f = m.frame(x);
    auto a = omega_forms(r, f, 2);
    auto b = omega_from_b(b_tensor(ricci(r), f, 2), f);
    for (int k = 0; k < 3; ++k) CHECK(max_abs(MatD(a[k] - b[k])) < 1e-10);
}

TEST_CASE("omega_forms rejects a degenerate frame") {
    QFrame<double> f = std_frame(1);
    f.I[1] = f.I[0];
    CurvatureTensor<double> flat = curvature_tensor(FlatConnection{4}, gauss_vec(4), DerivEngine::dual());
    CHECK_THROWS_AS(omega_forms(flat, f, 1), FrameDegenerate);
}

TEST_CASE("characteristic 4-form") {
    MatD r = MatD::Random(8, 8);
    MatD w = r - r.transpose();
    std::array<MatD, 3> om = {w, MatD(w * 0.5), MatD(w.transpose())};
    VecD x = gauss_vec(8), y = gauss_vec(8), z = gauss_vec(8);
    CHECK(std::abs(char4form(om, x, x, y, z)) < 1e-12);
    CHECK(std::abs(char4form(om, x, y, z, y)) < 1e-12);
    std::array<MatD, 3> zero = {MatD::Zero(8, 8), MatD::Zero(8, 8), MatD::Zero(8, 8)};
    CHECK(char4form(zero, x, y, z, gauss_vec(8)) == 0.0);
    // w ^ w on a decomposable pair: w = e1^e2 + e3^e4 gives (w^w)(e1,e2,e3,e4) = 2
    MatD s = MatD::Zero(4, 4);
    s(0, 1) = 1;
    s(1, 0) = -1;
    s(2, 3) = 1;
    s(3, 2) = -1;
    CHECK(std::abs(wedge_square(s, VecD::Unit(4, 0), VecD::Unit(4, 1), VecD::Unit(4, 2), VecD::Unit(4, 3)) - 2.0) <
          1e-15);
}

TEST_CASE("a parallel section is a twistor function with xi = 0") {
    auto flat = FlatConnection{4};
    auto mu = [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return Mat<T>(lift<T>(standard_frame(1)[0]) + Mat<T>::Zero(4, 4) * x[0]);
    };
    auto td = make_twistor(flat, mu, ConstFrame{1}, 1);
    TwistorCheck c = check_twistor(td, gauss_vec(4));
    CHECK(c.residual == 0.0);
    CHECK(max_abs(c.xi) == 0.0);
    // constant norm: the mu-connection is the gauge connection
    auto mc = mu_connection(td);
    VecD x = gauss_vec(4);
    CHECK(christoffel_gap(mc.christoffel(x), flat.christoffel(x)) == 0.0);
    // eta of a parallel structure vanishes
    AdaptedFrame<decltype(td)> af{&td};
    CHECK(max_abs(eta_form(flat, af, x, 1, DerivEngine::dual())) < 1e-15);
}

TEST_CASE("eta does not depend on the completion of the frame") {
    for (int n : {1, 2}) {
        HPn m(n);
        auto lc = hpn_levi_civita_closed(m);
        auto rotated = [&m](const auto& y) {
            using std::cos;
            using std::sin;
            auto f = m.frame(y);
            auto th = y[0] * 1.3 - y[1] * y[2] + 0.4;
            auto i2 = f.I[1], i3 = f.I[2];
            f.I[1] = i2 * cos(th) + i3 * sin(th);
            f.I[2] = i3 * cos(th) - i2 * sin(th);
            return f;
        };
        for (int s = 0; s < 5; ++s) {
            VecD x = gauss_vec(4 * n, 0.6);
            VecD a = eta_form(lc, HPnFrame{&m}, x, n, DerivEngine::dual());
            VecD b = eta_form(lc, rotated, x, n, DerivEngine::dual());
            CHECK(max_abs(VecD(a - b)) < 1e-6);
        }
    }
}

TEST_CASE("Hessian identity vanishes for the zero field") {
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    HessianCheck h = hessian_identity_check(lc, ZeroField{}, HPnFrame{&m}, gauss_vec(4, 0.5), 1, DerivEngine::dual());
    CHECK(h.hessian_form == 0.0);
    CHECK(h.curvature_form == 0.0);
}

TEST_CASE("Hessian and curvature expressions for the derivative of f_Q") {
    for (int n : {1, 2}) {
        HPn m(n);
        auto lc = hpn_levi_civita_closed(m);
        CircleAction act = CircleAction::uniform(n);
        for (int s = 0; s < 3; ++s) {
            VecD x = gauss_vec(4 * n, 0.6);
            HessianCheck h = hessian_identity_check(lc, act, HPnFrame{&m}, x, n, DerivEngine::dual());
            CHECK(h.hessian_form < 1e-4);
            CHECK(h.curvature_form < 1e-4);
        }
    }
}
