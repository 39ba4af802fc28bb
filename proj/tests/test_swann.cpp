#include "qgeom/quotient.hpp"
#include "test_util.hpp"

using namespace qt;

namespace {

CVec basis(int m, int l) {
    CVec e = CVec::Zero(m);
    e[l] = 1.0;
    return e;
}

double tdiff(const Triple& a, const Triple& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

const cplx I(0.0, 1.0);

struct ZeroField {
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const { return Vec<T>(x * 0.0); }
};

}  // namespace

TEST_CASE("theta forms") {
    SpherePoint e(basis(2, 0), CVec::Zero(2));
    CHECK(tdiff(theta_forms(e, {I * e.u, I * e.v}), {1.0, 0.0, 0.0}) < 1e-15);
    for (int s = 0; s < 50; ++s) {
        SpherePoint z(gauss_cvec(3), gauss_cvec(3));
        CHECK(tdiff(theta_forms(z, {z.u, z.v}), {0.0, 0.0, 0.0}) < 1e-15);
        SphereTangent w{gauss_cvec(3), gauss_cvec(3)};
        SpherePoint z2(2.0 * z.u, 2.0 * z.v);
        CHECK(tdiff(theta_forms(z, w), theta_forms(z2, {2.0 * w.du, 2.0 * w.dv})) < 1e-14);
    }
    CHECK_THROWS_AS(SpherePoint(CVec::Zero(2), CVec::Zero(2)), DomainError);
}

TEST_CASE("lifted action field") {
    std::vector<int> w = {1, 1};
    SphereTangent t = lifted_action_field(w, SpherePoint(basis(2, 0), CVec::Zero(2)));
    CHECK(std::abs(t.du[0] - I) == 0.0);
    CHECK(t.du[1] == cplx(0.0));
    CHECK(t.dv.norm() == 0.0);
    for (int s = 0; s < 50; ++s) {
        SpherePoint a(gauss_cvec(2), gauss_cvec(2)), b(gauss_cvec(2), gauss_cvec(2));
        SpherePoint ab(a.u + b.u, a.v + b.v);
        SphereTangent ta = lifted_action_field(w, a), tb = lifted_action_field(w, b), tab = lifted_action_field(w, ab);
        CHECK((tab.du - ta.du - tb.du).norm() < 1e-14);
        CHECK((tab.dv - ta.dv - tb.dv).norm() < 1e-14);
        // tangent to the spheres: Re <z, X-hat> = 0
        double re = (a.u.dot(ta.du) + a.v.dot(ta.dv)).real();
        CHECK(std::abs(re) < 1e-14);
    }
}

TEST_CASE("lifted moment map") {
    std::vector<int> w = {1, 1};
    CHECK(tdiff(mu_hat(SpherePoint(basis(2, 0), CVec::Zero(2)), w), {1.0, 0.0, 0.0}) < 1e-15);
    CVec u = basis(2, 0) / std::sqrt(2.0), v = basis(2, 1) / std::sqrt(2.0);
    CHECK(tdiff(mu_hat(SpherePoint(u, v), w), {0.0, 0.0, 0.0}) < 1e-15);
    for (int s = 0; s < 100; ++s) {
        SpherePoint z(gauss_cvec(2), gauss_cvec(2));
        const double t = 6.0 * gauss();
        Triple a = mu_hat(z, w), b = mu_hat(fiber_rotate(z, t), w);
        CHECK(std::abs(a[0] - b[0]) < 1e-10);
        cplx rot = std::polar(1.0, 2.0 * t) * cplx(a[1], a[2]);
        CHECK(std::abs(cplx(b[1], b[2]) - rot) < 1e-10);
        CHECK(tdiff(mu_hat(left_act(z, w, t), w), a) < 1e-10);
    }
}

TEST_CASE("fibre frame Gram matrix") {
    for (int s = 0; s < 20; ++s) {
        SpherePoint z(gauss_cvec(3), gauss_cvec(3));
        MatD g = fiber_gram(z);
        CHECK(max_abs(MatD(g.transpose() * g - MatD::Identity(3, 3))) < 1e-12);
        Alignment a = frame_alignment(z);
        CHECK(std::abs(std::abs(a.det) - 1.0) < 1e-12);
    }
}

TEST_CASE("lift agrees with f_Q downstairs") {
    for (int n : {1, 2}) {
        HPn m(n);
        std::vector<int> w(n + 1, 1);
        for (int s = 0; s < 10; ++s) {
            SpherePoint z(gauss_cvec(n + 1), gauss_cvec(n + 1));
            LiftComparison c = compare_with_downstairs(m, z, w);
            CHECK(c.residual < 1e-4);
            Triple h = mu_hat(z, w);
            Eigen::Vector3d t = c.rotation * Eigen::Vector3d(h[0], h[1], h[2]);
            CHECK(tdiff({t[0], t[1], t[2]}, c.downstairs) < 1e-4);
        }
    }
}

TEST_CASE("derivative of the moment map components") {
    HPn m(1);
    auto lc = hpn_levi_civita_closed(m);
    CHECK(check_eq_5_1(lc, ZeroField{}, HPnFrame{&m}, gauss_vec(4, 0.5), 1, DerivEngine::dual()) == 0.0);
    CircleAction act = CircleAction::uniform(1);
    for (int s = 0; s < 5; ++s)
        CHECK(check_eq_5_1(lc, act, HPnFrame{&m}, gauss_vec(4, 0.6), 1, DerivEngine::dual()) < 1e-3);
    // at fixed points the left side vanishes
    VecD q = VecD::Zero(4);
    q[0] = 0.4;
    q[1] = -0.3;
    CHECK(check_eq_5_1(lc, act, HPnFrame{&m}, q, 1, DerivEngine::dual()) < 1e-3);
}

TEST_CASE("zero set classifier") {
    CHECK(classify(SpherePoint(basis(2, 0), CVec::Zero(2))).label == ZeroSetKind::PontecorvoDomain);
    CHECK(classify(SpherePoint(basis(2, 0), basis(2, 1))).label == ZeroSetKind::OnZeroSet);
    CHECK(classify(SpherePoint(basis(2, 0), basis(2, 0))).label == ZeroSetKind::Generic);
    CHECK(classify(SpherePoint(0.5 * basis(2, 0), basis(2, 1))).label == ZeroSetKind::OppositeDomain);
    CHECK(zero_set_name(ZeroSetKind::PontecorvoDomain) == "pontecorvo_domain");
    CHECK(zero_set_name(ZeroSetKind::OnZeroSet) == "on_zero_set");
    CHECK(zero_set_name(ZeroSetKind::OppositeDomain) == "opposite_domain");
    CHECK(zero_set_name(ZeroSetKind::Generic) == "generic");
    // scale invariance of the label
    SpherePoint z(basis(3, 0), basis(3, 2));
    CHECK(classify(SpherePoint(1e-6 * z.u, 1e-6 * z.v)).label == ZeroSetKind::OnZeroSet);
}

TEST_CASE("classifier matches the vanishing of f_Q downstairs") {
    HPn m(1);
    std::vector<int> w(2, 1);
    for (int s = 0; s < 100; ++s) {
        SpherePoint z = s % 2 ? sample_zero_set(2, rng()) : SpherePoint(gauss_cvec(2), gauss_cvec(2));
        bool zero = classify(z).label == ZeroSetKind::OnZeroSet;
        LiftComparison c = compare_with_downstairs(m, z, w);
        CHECK(zero == (c.fq_norm < 1e-6));
    }
}

TEST_CASE("complex coordinate change") {
    CVec u = gauss_cvec(2);
    CVec z = coordinate_change(u, u);
    CHECK(z.tail(2).norm() == 0.0);
    CHECK(std::abs(cplx((z.transpose() * z)(0, 0)) - cplx((u.transpose() * u)(0, 0))) < 1e-14);
    CVec e = basis(2, 0);
    CVec z2 = coordinate_change(e, CVec::Zero(2));
    CHECK(std::abs(z2.squaredNorm() - 0.5) < 1e-15);
    for (int s = 0; s < 100; ++s) {
        CoordinateResiduals r = coordinate_change_check(gauss_cvec(3), gauss_cvec(3));
        CHECK(r.bilinear < 1e-12);
        CHECK(r.u_norm < 1e-12);
        CHECK(r.v_norm < 1e-12);
    }
}

TEST_CASE("quaternion coordinates round trip") {
    SpherePoint z(gauss_cvec(3), gauss_cvec(3));
    SpherePoint back = from_homogeneous(to_quaternions(z));
    CHECK((back.u - z.u).norm() < 1e-15);
    CHECK((back.v - z.v).norm() < 1e-15);
}
