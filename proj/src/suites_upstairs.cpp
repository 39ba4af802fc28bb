#include "qgeom/quotient.hpp"
#include "suite_util.hpp"

namespace qgeom {

namespace {

CVec complex_gaussian(SuiteRun& run, int m, double scale = 1.0) {
    VecD g = run.gaussian(2 * m, scale);
    CVec z(m);
    for (int l = 0; l < m; ++l) z[l] = cplx(g[2 * l], g[2 * l + 1]);
    return z;
}

double triple_diff(const Triple& a, const Triple& b) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

CVec basis(int m, int l) {
    CVec e = CVec::Zero(m);
    e[l] = 1.0;
    return e;
}

}  // namespace

void suite_swann(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(100);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    const std::vector<int> w(n + 1, 1);
    std::vector<SpherePoint> zs;
    for (int s = 0; s < k; ++s) zs.emplace_back(complex_gaussian(run, n + 1), complex_gaussian(run, n + 1));

    run.check("theta normalizations: theta(i z) at (e_1, 0), radial vanishing, scale invariance", k, 1e-14, [&] {
        SpherePoint e(basis(n + 1, 0), CVec::Zero(n + 1));
        double r = triple_diff(theta_forms(e, {cplx(0, 1) * e.u, cplx(0, 1) * e.v}), {1.0, 0.0, 0.0});
        for (const auto& z : zs) {
            r = std::max(r, triple_diff(theta_forms(z, {z.u, z.v}), {0.0, 0.0, 0.0}));
            SphereTangent t{z.v, z.u};
            SpherePoint z2(2.0 * z.u, 2.0 * z.v);
            r = std::max(r, triple_diff(theta_forms(z, t), theta_forms(z2, {2.0 * t.du, 2.0 * t.dv})));
        }
        return r;
    });
    run.check("theta_a(X-hat) at the chart section = mu_a (O(3)-aligned fibre frame)", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) { return compare_with_downstairs(m, zs[s], w, eng).residual; });
    });
    run.check("mu-hat at an arbitrary fibre point, transported to the chart frame, = mu", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            LiftComparison c = compare_with_downstairs(m, zs[s], w, eng);
            Triple a = mu_hat(zs[s], w);
            Eigen::Vector3d t = c.rotation * Eigen::Vector3d(a[0], a[1], a[2]);
            return std::max(triple_diff({t[0], t[1], t[2]}, c.downstairs),
                            max_abs(MatD(c.rotation.transpose() * c.rotation - MatD::Identity(3, 3))));
        });
    });
    run.check("fibre Gram matrix orthogonal", k, 1e-12, [&] {
        return max_over(k, [&](int s) {
            MatD g = fiber_gram(zs[s]);
            return max_abs(MatD(g.transpose() * g - MatD::Identity(3, 3)));
        });
    });
    {
        const int k2 = run.cfg().samples_or(20);
        auto pts = run.gaussians(k2, m.dim(), 0.6);
        for (int s = 0; s < k2 / 2; ++s) pts[s] = complex_point(run, n, 0.8);
        run.check("d mu_a = -1/2 iota_X Omega_a - mu_c theta_b + mu_b theta_c", k2, tol.curvature, [&] {
            return max_over(k2, [&](int s) {
                return check_eq_5_1(hpn_levi_civita_closed(m), CircleAction::uniform(n), HPnFrame{&m}, pts[s], n, eng);
            });
        });
    }
    {
        const int k3 = run.cfg().samples_or(500);
        std::vector<SpherePoint> mix;
        for (int s = 0; s < k3; ++s) {
            if (s % 2 == 0)
                mix.push_back(sample_zero_set(n + 1, run.rng()));
            else
                mix.emplace_back(complex_gaussian(run, n + 1), complex_gaussian(run, n + 1));
        }
        run.check("zero set upstairs projects to {f_Q = 0}: label agreement count", k3, 0.0, [&] {
            std::vector<double> bad(k3);
            parallel_for(k3, [&](int s) {
                bool up = classify(mix[s]).label == ZeroSetKind::OnZeroSet;
                bool down = compare_with_downstairs(m, mix[s], w, eng).fq_norm < 1e-8;
                bad[s] = up != down ? 1.0 : 0.0;
            });
            double c = 0.0;
            for (double b : bad) c += b;
            return c;
        });
    }
    run.check("coordinate change: t(z) z = t(u) v and the two norm identities", k, 1e-12, [&] {
        double r = 0.0;
        for (const auto& z : zs) {
            CoordinateResiduals c = coordinate_change_check(z.u, z.v);
            r = std::max({r, c.bilinear, c.u_norm, c.v_norm});
        }
        return r;
    });
    run.check("fibre rotation: d mu-hat = (0, 2 mu-hat_3, -2 mu-hat_2)", k, 1e-6, [&] {
        const double h = 1e-4;
        double r = 0.0;
        for (const auto& z : zs) {
            Triple a = mu_hat(z, w), p = mu_hat(fiber_rotate(z, -h), w), q = mu_hat(fiber_rotate(z, h), w);
            Triple d{(p[0] - q[0]) / (2 * h), (p[1] - q[1]) / (2 * h), (p[2] - q[2]) / (2 * h)};
            r = std::max(r, triple_diff(d, {0.0, 2.0 * a[2], -2.0 * a[1]}));
        }
        return r;
    });
    run.check("mu-hat invariant under the action, rotated by e^{2it} along the fibre", k, 1e-10, [&] {
        double r = 0.0;
        for (const auto& z : zs) {
            const double t = run.uniform(0.0, 2.0 * M_PI);
            Triple a = mu_hat(z, w);
            r = std::max(r, triple_diff(mu_hat(left_act(z, w, t), w), a));
            Triple b = mu_hat(fiber_rotate(z, t), w);
            cplx rot = std::polar(1.0, 2.0 * t) * cplx(a[1], a[2]);
            r = std::max({r, std::abs(b[0] - a[0]), std::abs(cplx(b[1], b[2]) - rot)});
        }
        return r;
    });
}

void suite_pontecorvo(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(200);
    const DerivEngine eng = run.eng();
    HPn m(n);
    const int sz = n + 1;
    const std::vector<int> w(sz, 1);
    run.check("classifier on (e_1, 0), (e_1, e_2), (e_1, e_1)", 3, 0.0, [&] {
        double bad = 0.0;
        bad += classify({basis(sz, 0), CVec::Zero(sz)}).label != ZeroSetKind::PontecorvoDomain;
        bad += classify({basis(sz, 0), basis(sz, 1)}).label != ZeroSetKind::OnZeroSet;
        bad += classify({basis(sz, 0), basis(sz, 0)}).label != ZeroSetKind::Generic;
        return bad;
    });
    std::vector<SpherePoint> pts;
    for (int s = 0; s < k; ++s) {
        SpherePoint z = sample_zero_set(sz, run.rng());
        pts.emplace_back(z.u, CVec(z.v * run.uniform(0.1, 2.0)));
    }
    run.check("on t(u) v = 0 the signs of mu-hat_1 and <mu, I_z> match the label", k, 0.0, [&] {
        std::vector<double> bad(k);
        parallel_for(k, [&](int s) {
            ZeroSetKind lab = classify(pts[s]).label;
            LiftComparison c = compare_with_downstairs(m, pts[s], w, eng);
            Eigen::Vector3d down(c.downstairs[0], c.downstairs[1], c.downstairs[2]);
            const double up = mu_hat(pts[s], w)[0], along = c.rotation.col(0).dot(down);
            bool ok = lab == ZeroSetKind::PontecorvoDomain ? (up > 0 && along > 0)
                      : lab == ZeroSetKind::OppositeDomain ? (up < 0 && along < 0)
                                                           : false;
            bad[s] = ok ? 0.0 : 1.0;
        });
        double c = 0.0;
        for (double b : bad) c += b;
        return c;
    });
    run.check("V' = {(u, 0)} lies in the Pontecorvo domain", k, 0.0, [&] {
        double bad = 0.0;
        for (int s = 0; s < k; ++s)
            bad += classify({complex_gaussian(run, sz), CVec::Zero(sz)}).label != ZeroSetKind::PontecorvoDomain;
        return bad;
    });
}

void suite_grassmann(SuiteRun& run) {
    const int n = run.cfg().n;
    const int sz = n + 1;
    const int k = run.cfg().samples_or(100);
    run.check("mu° on hand cases", 3, 1e-15, [&] {
        CVec a = basis(sz, 0), zero = CVec::Zero(sz);
        CVec b = zero;
        if (sz > 1) b[1] = 1.0;
        double r = triple_diff(mu_circ_hat({a, zero}), {1.0, 0.0, 0.0});
        r = std::max(r, triple_diff(mu_circ_hat({b, b}), {0.0, 0.0, 0.0}));
        r = std::max(r, triple_diff(mu_circ_hat({a, a}), {0.0, 0.0, 2.0}));
        return r;
    });
    run.check("mu° S^1-covariance", k, 1e-10, [&] {
        double r = 0.0;
        for (int s = 0; s < k; ++s) {
            SpherePoint z(complex_gaussian(run, sz), complex_gaussian(run, sz));
            r = std::max(r, mu_circ_invariance(z, run.uniform(0.0, 2.0 * M_PI)));
        }
        return r;
    });
    run.check("mu° = 0 exactly where u_1 = v_1 = 0 on the zero set", run.cfg().samples_or(1000), 0.0, [&] {
        const int k2 = run.cfg().samples_or(1000);
        double bad = 0.0;
        for (int s = 0; s < k2; ++s) {
            SpherePoint z = sample_zero_set(sz, run.rng());
            if (s % 4 == 0 && sz > 2) {
                SpherePoint t = sample_zero_set(sz - 1, run.rng());
                CVec u = CVec::Zero(sz), v = CVec::Zero(sz);
                u.tail(sz - 1) = t.u;
                v.tail(sz - 1) = t.v;
                z = SpherePoint(u, v);
            }
            Triple mc = mu_circ_hat(z);
            bool vanish = std::sqrt(mc[0] * mc[0] + mc[1] * mc[1] + mc[2] * mc[2]) < 1e-12;
            bool axis = std::abs(z.u[0]) + std::abs(z.v[0]) < 1e-6;
            bad += vanish != axis;
        }
        return bad;
    });
    struct Case {
        int m;
        std::vector<int> dims;
    };
    for (const Case& c : {Case{3, {2, 0}}, Case{4, {4, 4}}}) {
        GrSearchOptions opt;
        opt.rng_seed = run.cfg().seed;
        run.check("fixed planes of (1,2) on Gr(2," + std::to_string(c.m) + "): CP^" + std::to_string(c.m - 2) +
                      " and Gr(2," + std::to_string(c.m - 1) + ")",
                  opt.seeds, 0.0, [&] {
                      GrFixedResult res = weighted_fixed_sets_on_gr(1, 2, c.m, opt);
                      double bad = std::abs(double(res.components.size()) - double(c.dims.size()));
                      int cp = 0, gr = 0;
                      for (const auto& comp : res.components) {
                          if (comp.contains_first_axis && comp.dim == 2 * (c.m - 2)) ++cp;
                          if (comp.orthogonal_first_axis && comp.dim == 4 * (c.m - 3)) ++gr;
                      }
                      bad += std::abs(cp - 1) + std::abs(gr - 1);
                      if (res.max_zero_set_residual > 1e-10) bad += 1.0;
                      return bad;
                  });
    }
}

void suite_tcpn(SuiteRun& run) {
    const int n = std::max(2, run.cfg().n);
    const int k = run.cfg().samples_or(200);
    run.check("f o iota lands on the zero set", k, 0.0, [&] {
        double bad = 0.0;
        for (int s = 0; s < k; ++s) bad += classify(tcp_iota(sample_lpoint(n, run.rng()))).label != ZeroSetKind::OnZeroSet;
        return bad;
    });
    const int k2 = run.cfg().samples_or(100);
    TcpReport rep;
    bool ok = true;
    try {
        rep = tcp_phi_injectivity(n, k2, run.cfg().seed);
    } catch (const std::exception&) {
        ok = false;
    }
    auto guard = [ok](double v) { return ok ? v : std::numeric_limits<double>::infinity(); };
    run.check("phi well-defined on S^1-orbits", k2, 1e-8, [&] { return guard(rep.well_defined); });
    run.check("phi injective: 1e-4 / min image orbit distance", k2, 1.0, [&] { return guard(1e-4 / rep.min_separation); });
    run.check("(0,1,...,1) and diagonal actions commute", k2, 1e-10, [&] { return guard(rep.commute); });
    run.check("zero-section image has dimension 2(n-1)", 1, 0.0,
              [&] { return guard(std::abs(rep.zero_section_rank - 2.0 * (n - 1))); });
}

}  // namespace qgeom
