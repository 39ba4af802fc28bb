#include "qgeom/chern.hpp"
#include "suite_util.hpp"

namespace qgeom {

namespace {

// Generic points with ||mu|| bounded below.
std::vector<VecD> away_from_zero_set(SuiteRun& run, const MuDatum& td, int count, int d) {
    std::vector<VecD> out;
    while (int(out.size()) < count) {
        VecD x = run.gaussian(d, 0.6);
        if (td.mu_norm(x) > 0.05) out.push_back(x);
    }
    return out;
}

double christoffel_diff(const Christoffel<double>& a, const Christoffel<double>& b) {
    double r = 0.0;
    for (int i = 0; i < a.dim(); ++i) r = std::max(r, max_abs(MatD(a.slices[i] - b.slices[i])));
    return r;
}

}  // namespace

void suite_twistor(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(20);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    ChernOptions opt;
    opt.eng = eng;
    MuDatum td = make_mu_datum(m, opt);
    auto pts = away_from_zero_set(run, td, k, m.dim());
    std::vector<TwistorCheck> tc(k);
    parallel_for(k, [&](int s) { tc[s] = check_twistor(td, pts[s]); });
    run.check("twistor equation nabla mu = sum (xi o I_a) I_a", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& c : tc) r = std::max({r, c.residual, c.off_q});
        return r;
    });
    run.check("d||mu|| = xi o I, I = mu/||mu||", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& c : tc) r = std::max(r, c.norm_residual);
        return r;
    });
    run.check("eta_I = 2 d log||mu|| for the Levi-Civita connection", k, tol.first_deriv, [&] {
        AdaptedFrame<MuDatum> af{&td};
        return max_over(k, [&](int s) {
            VecD eta = eta_form(td.gauge, af, pts[s], n, eng);
            auto lognorm = [&td](const auto& y) {
                using std::log;
                return log(td.mu_norm(y));
            };
            return max_abs(VecD(eta - 2.0 * gradient(lognorm, pts[s], eng)));
        });
    });
}

void suite_mu_connection(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(20);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    const int d = m.dim();
    ChernOptions opt;
    opt.eng = eng;
    MuDatum td = make_mu_datum(m, opt);
    auto conn = mu_connection(td);
    AdaptedFrame<MuDatum> af{&td};
    auto pts = away_from_zero_set(run, td, k, d);

    struct Local {
        MatD ric;
        QFrame<double> f;
        std::array<MatD, 3> om;
    };
    std::vector<Local> loc(k);
    parallel_for(k, [&](int s) {
        CurvatureTensor<double> r = curvature_tensor(conn, pts[s], eng);
        loc[s].ric = ricci(r);
        loc[s].f = af(pts[s]);
        loc[s].om = omega_forms(r, loc[s].f, n);
    });

    run.check("nabla^mu I = 0", k, tol.first_deriv, [&] {
        auto unit = [&td](const auto& y) { return decltype(td.mu(y))(td.mu(y) / td.mu_norm(y)); };
        return max_over(k, [&](int s) {
            double r = 0.0;
            for (int i = 0; i < d; ++i)
                r = std::max(r, max_abs(covariant_deriv_endo(conn, unit, pts[s], VecD(VecD::Unit(d, i)), eng)));
            return r;
        });
    });
    run.check("nabla^mu torsion-free and Q-preserving", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            return std::max(torsion_norm(conn, pts[s]), q_preservation_residual(conn, HPnFrame{&m}, pts[s], n, eng));
        });
    });
    run.check("Ric^mu symmetric", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& l : loc) r = std::max(r, max_abs(MatD(l.ric - l.ric.transpose())));
        return r;
    });
    run.check("Ric^mu(I_1., I_1.) = Ric^mu, Ric^mu(I_b., I_b.) = -Ric^mu for b = 2, 3", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& l : loc) {
            r = std::max(r, max_abs(MatD(l.f.I[0].transpose() * l.ric * l.f.I[0] - l.ric)));
            for (int b = 1; b < 3; ++b) r = std::max(r, max_abs(MatD(l.f.I[b].transpose() * l.ric * l.f.I[b] + l.ric)));
        }
        return r;
    });
    run.check("Pi_h Ric^mu = 0", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& l : loc) r = std::max(r, max_abs(pi_h(l.ric, l.f)));
        return r;
    });
    run.check("Omega_2 = Omega_3 = 0", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& l : loc) r = std::max({r, max_abs(l.om[1]), max_abs(l.om[2])});
        return r;
    });
    run.check("Omega_1 = Ric^mu_I / n", k, tol.first_deriv, [&] {
        double r = 0.0;
        for (const auto& l : loc) r = std::max(r, max_abs(MatD(l.om[0] - l.ric * l.f.I[0] / double(n))));
        return r;
    });
    run.check("nabla^mu unchanged under mu -> a mu, a > 0", k, 1e-6, [&] {
        ChernOptions o2 = opt, o3 = opt;
        o2.gauge.c = 0.7;
        o3.scale = 3.5;
        MuDatum t2 = make_mu_datum(m, o2), t3 = make_mu_datum(m, o3);
        auto c2 = mu_connection(t2);
        auto c3 = mu_connection(t3);
        return max_over(k, [&](int s) {
            Christoffel<double> g = conn.christoffel(pts[s]);
            return std::max(christoffel_diff(g, c2.christoffel(pts[s])), christoffel_diff(g, c3.christoffel(pts[s])));
        });
    });

    // On F = CP^n
    const MatD tf = complex_tangent(n);
    std::vector<VecD> fpts;
    for (int s = 0; s < k; ++s) fpts.push_back(complex_point(run, n, 0.8));
    auto on_f = [&](const VecD& x) {
        Christoffel<double> diff = conn.christoffel(x) - td.gauge.christoffel(x);
        double r = 0.0;
        for (int a = 0; a < tf.cols(); ++a)
            for (int b = 0; b < tf.cols(); ++b) r = std::max(r, max_abs(diff.apply(tf.col(a), tf.col(b))));
        return r;
    };
    run.check("nabla^mu = nabla^g on TF x TF along F", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            return std::max(on_f(fpts[s]), max_abs(MuAlpha<MuDatum>{&td}(fpts[s])));
        });
    });
    run.check("off-F control: 10 x (on-F residual) / (off-F residual)", k, 1.0, [&] {
        double on = max_over(k, [&](int s) { return on_f(fpts[s]); });
        std::vector<double> off(k);
        parallel_for(k, [&](int s) { off[s] = on_f(pts[s]); });
        double lo = *std::min_element(off.begin(), off.end());
        return 10.0 * std::max(on, 1e-300) / lo;
    });
    run.check("n Ric^g = (n+2) Ric^mu on TF (relative)", k, tol.curvature, [&] {
        auto lc = hpn_levi_civita_closed(m);
        return max_over(k, [&](int s) {
            MatD rg = tf.transpose() * ricci(curvature_tensor(lc, fpts[s], eng)) * tf;
            MatD rm = tf.transpose() * ricci(curvature_tensor(conn, fpts[s], eng)) * tf;
            return max_abs(MatD(n * rg - (n + 2.0) * rm)) / max_abs(MatD(n * rg));
        });
    });
    run.check("L_X I = nabla_X I - [nabla X, I], I = mu/||mu||", k, tol.first_deriv, [&] {
        auto unit = [&td](const auto& y) { return decltype(td.mu(y))(td.mu(y) / td.mu_norm(y)); };
        const CircleAction act = CircleAction::uniform(n);
        return max_over(k, [&](int s) {
            const VecD& x = pts[s];
            MatD lie = lie_derivative_endo(act, unit, x, eng);
            MatD nx = nabla_field(td.gauge, act, x, eng);
            MatD i = unit(x);
            MatD rhs = covariant_deriv_endo(td.gauge, unit, x, VecD(act(x)), eng) - (nx * i - i * nx);
            return max_abs(MatD(lie - rhs));
        });
    });
}

}  // namespace qgeom
