#include <algorithm>
#include <map>

#include "suite_util.hpp"

namespace qgeom {

namespace {

struct LinearXi {
    MatD a;
    VecD b;
    template <class T>
    Vec<T> operator()(const Vec<T>& x) const {
        return lift<T>(a) * x + lift<T>(b);
    }
};

double frame_relations(const QFrame<double>& f) {
    const Eigen::Index d = f.I[0].rows();
    MatD id = MatD::Identity(d, d);
    double r = 0.0;
    for (const auto& m : f.I) r = std::max(r, max_abs(MatD(m * m + id)));
    r = std::max(r, max_abs(MatD(f.I[0] * f.I[1] - f.I[2])));
    r = std::max(r, max_abs(MatD(f.I[1] * f.I[2] - f.I[0])));
    r = std::max(r, max_abs(MatD(f.I[2] * f.I[0] - f.I[1])));
    return r;
}

}  // namespace

void suite_algebra(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(100);
    HPn m(n);
    auto pts = run.gaussians(k, 4 * n, 0.8);
    auto quats = run.gaussians(k, 12, 1.0);
    run.check("quaternion product associative and multiplicative norm", k, 1e-10, [&] {
        return max_over(k, [&](int s) {
            Quatd p = quat_at(quats[s], 0), q = quat_at(quats[s], 1), r = quat_at(quats[s], 2);
            Quatd d = (p * q) * r - p * (q * r);
            double e = std::sqrt(d.norm2());
            e = std::max(e, std::abs((p * q).norm2() - p.norm2() * q.norm2()) / (1.0 + p.norm2() * q.norm2()));
            Quatd ij = unit_i<double>() * unit_j<double>() - unit_k<double>();
            return std::max(e, std::sqrt(ij.norm2()));
        });
    });
    run.check("q = u + j v round trip through complex halves", k, 1e-12, [&] {
        return max_over(k, [&](int s) {
            HVecd q = from_real(pts[s]);
            auto [u, v] = split_complex(q);
            return max_abs(VecD(embed_real(join_complex(u, v)) - pts[s]));
        });
    });
    run.check("frame relations I_a^2 = -1, I_1 I_2 = I_3", k, 1e-10,
              [&] { return max_over(k, [&](int s) { return frame_relations(m.frame(pts[s])); }); });
    run.check("frame orthonormal for (A, B) = -tr(AB)/4n", k, 1e-10,
              [&] { return max_over(k, [&](int s) { return frame_defect(m.frame(pts[s]), n); }); });
    run.check("frame g-compatible: g(I_a X, I_a Y) = g(X, Y)", k, 1e-10, [&] {
        return max_over(k, [&](int s) {
            MatD g = m.metric(pts[s]);
            QFrame<double> f = m.frame(pts[s]);
            double r = 0.0;
            for (const auto& a : f.I) r = std::max(r, max_abs(MatD(a.transpose() * g * a - g)));
            return r;
        });
    });
}

void suite_connection(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(20);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    auto lc = hpn_levi_civita(m, eng);
    auto closed = hpn_levi_civita_closed(m);
    auto pts = run.gaussians(k, 4 * n, 0.6);
    run.check("Levi-Civita torsion", k, 1e-14, [&] { return max_over(k, [&](int s) { return torsion_norm(lc, pts[s]); }); });
    run.check("Levi-Civita metricity nabla g = 0", k, 1e-5,
              [&] { return max_over(k, [&](int s) { return metricity_residual(lc, HPnMetric{&m}, pts[s], eng); }); });
    run.check("Levi-Civita preserves Q", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) { return q_preservation_residual(lc, HPnFrame{&m}, pts[s], n, eng); });
    });
    run.check("Levi-Civita equals D + S^xi0, xi0 = -<q, dq>/(1 + |q|^2)", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            Christoffel<double> a = lc.christoffel(pts[s]), b = closed.christoffel(pts[s]);
            double r = 0.0;
            for (int i = 0; i < m.dim(); ++i) r = std::max(r, max_abs(MatD(a.slices[i] - b.slices[i])));
            return r;
        });
    });
    run.check("Einstein Ric = lambda g with one lambda", k, tol.curvature, [&] {
        std::vector<double> lam(k), dev(k);
        parallel_for(k, [&](int s) {
            MatD ric = ricci(curvature_tensor(lc, pts[s], eng));
            MatD g = m.metric(pts[s]);
            lam[s] = (g.inverse() * ric).trace() / m.dim();
            dev[s] = max_abs(MatD(ric - lam[s] * g)) / std::abs(lam[s]);
        });
        double mean = 0.0;
        for (double l : lam) mean += l / k;
        double r = 0.0;
        for (int s = 0; s < k; ++s) r = std::max({r, dev[s], std::abs(lam[s] - mean) / std::abs(mean)});
        if (!(mean > 0.0)) return std::numeric_limits<double>::infinity();
        return r;
    });
    run.check("Killing field of the diagonal action: L_X g = 0", k, 1e-5, [&] {
        return max_over(k, [&](int s) {
            return max_abs(lie_derivative_metric(CircleAction::uniform(n), HPnMetric{&m}, pts[s], eng));
        });
    });
}

void suite_weyl_flat(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(20);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    const int d = m.dim();
    auto lc = hpn_levi_civita(m, eng);
    auto pts = run.gaussians(k, d, 0.6);
    LinearXi xi{MatD::Zero(d, d), run.gaussian(d, 0.3)};
    for (int i = 0; i < d; ++i) xi.a.row(i) = run.gaussian(d, 0.3).transpose();
    auto shifted = modify_connection(lc, xi, HPnFrame{&m});
    QFrame<double> f = m.frame<double>(VecD(VecD::Zero(d)));
    run.check("quaternionic Weyl curvature W = 0", k, tol.curvature, [&] {
        return max_over(k, [&](int s) { return tensor_max_abs(weyl(curvature_tensor(lc, pts[s], eng), f, n)); });
    });
    run.check("W unchanged under nabla -> nabla + S^xi", k, tol.curvature, [&] {
        return max_over(k, [&](int s) {
            CurvatureTensor<double> a = weyl(curvature_tensor(lc, pts[s], eng), f, n);
            CurvatureTensor<double> b = weyl(curvature_tensor(shifted, pts[s], eng), f, n);
            double r = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) r = std::max(r, max_abs(MatD(a.r[i][j] - b.r[i][j])));
            return r;
        });
    });
    run.check("nabla + S^xi torsion-free and Q-preserving", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            return std::max(torsion_norm(shifted, pts[s]), q_preservation_residual(shifted, HPnFrame{&m}, pts[s], n, eng));
        });
    });
}

void suite_fixed_points(SuiteRun& run) {
    const int n = run.cfg().n;
    const int k = run.cfg().samples_or(30);
    const auto& tol = run.cfg().tol;
    const DerivEngine eng = run.eng();
    HPn m(n);
    const int d = m.dim();
    auto lc = hpn_levi_civita(m, eng);
    const CircleAction act = CircleAction::uniform(n);
    const HPnFrame frame{&m};
    const MatD tf = complex_tangent(n);
    std::vector<VecD> fpts;
    for (int s = 0; s < k; ++s) fpts.push_back(complex_point(run, n, 0.8));
    auto generic = run.gaussians(k, d, 0.6);
    auto fq = fq_field(lc, act, frame, n, eng);

    run.check("X = 0 on C^n", k, 0.0, [&] { return max_over(k, [&](int s) { return max_abs(act(fpts[s])); }); });
    run.check("rank nabla X = 2n on F", k, 0.0, [&] {
        return max_over(k, [&](int s) {
            MatD nx = nabla_field(lc, act, fpts[s], eng);
            return double(std::abs(d - int(kernel_basis(nx).cols()) - 2 * n));
        });
    });
    run.check("||f_Q|| constant on F", k, tol.first_deriv, [&] {
        std::vector<double> v(k);
        parallel_for(k, [&](int s) { v[s] = q_norm(fq(fpts[s]), n); });
        return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
    });
    run.check("T_x F = Ker(nabla X)", k, 1e-5, [&] {
        return max_over(k, [&](int s) {
            MatD ker = kernel_basis(nabla_field(lc, act, fpts[s], eng));
            if (ker.cols() != tf.cols()) return 1.0;
            return principal_angles(ker, tf).maxCoeff();
        });
    });
    run.check("F almost complex: f_Q/||f_Q|| preserves TF", k, 1e-5, [&] {
        return max_over(k, [&](int s) {
            MatD a = fq(fpts[s]);
            a /= q_norm(a, n);
            MatD img = a * tf;
            return max_abs(MatD(img - tf * (tf.transpose() * img)));
        });
    });
    run.check("TF and I_2 TF transversal (0.1 rad / min principal angle)", k, 1.0, [&] {
        return max_over(k, [&](int s) {
            MatD i2 = m.frame(fpts[s]).I[1];
            return 0.1 / principal_angles(tf, i2 * tf).minCoeff();
        });
    });
    run.check("F totally geodesic", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) { return totally_geodesic_defect(lc, HPnMetric{&m}, fpts[s], tf); });
    });
    run.check("nabla f_Q = 0 on F", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            double r = 0.0;
            for (int i = 0; i < d; ++i)
                r = std::max(r, max_abs(covariant_deriv_endo(lc, fq, fpts[s], VecD(VecD::Unit(d, i)), eng)));
            return r;
        });
    });
    run.check("nabla f_Q by Hessian and by curvature", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            HessianCheck h = hessian_identity_check(lc, act, frame, generic[s], n, eng);
            return std::max(h.hessian_form, h.curvature_form);
        });
    });
    run.check("nabla X normalizes Q", k, tol.first_deriv, [&] {
        return max_over(k, [&](int s) {
            MatD nx = nabla_field(lc, act, generic[s], eng);
            QFrame<double> f = m.frame(generic[s]);
            double r = 0.0;
            for (const auto& i : f.I) r = std::max(r, max_abs(q_project(MatD(nx * i - i * nx), f, n).z_part));
            return r;
        });
    });

    struct Expect {
        int n;
        std::vector<int> weights;
        std::vector<std::pair<int, FixedKind>> comps;
        std::string name;
    };
    std::vector<Expect> cases = {
        {n, std::vector<int>(n + 1, 1), {{2 * n, FixedKind::TransversalComplex}}, "fixed components of (1,...,1): CP^n"},
        {1, {1, 2}, {{0, FixedKind::Isolated}, {0, FixedKind::Isolated}}, "fixed components of (1,2) on HP^1: two points"},
        {2, {1, 1, 2}, {{2, FixedKind::TransversalComplex}, {0, FixedKind::Isolated}},
         "fixed components of (1,1,2) on HP^2: CP^1 and a point"}};
    for (const auto& c : cases) {
        FixedSearchOptions opt;
        opt.rng_seed = run.cfg().seed;
        run.check(c.name, opt.seeds, 0.0, [&] {
            HPn mm(c.n);
            FixedSearchResult res = find_fixed_components(mm, CircleAction(c.weights), opt);
            std::multimap<int, FixedKind> want(c.comps.begin(), c.comps.end());
            double bad = std::abs(double(res.components.size()) - double(c.comps.size()));
            for (const auto& comp : res.components) {
                auto it = want.find(comp.dim);
                while (it != want.end() && it->first == comp.dim && it->second != comp.kind) ++it;
                if (it == want.end() || it->first != comp.dim)
                    bad += 1.0;
                else
                    want.erase(it);
                if (comp.kind == FixedKind::TransversalComplex && comp.fq_spread > tol.first_deriv) bad += 1.0;
            }
            return bad;
        });
    }
}

const std::vector<std::string>& registered_suites() {
    static const std::vector<std::string> names = {"algebra",   "connection", "fixed-points", "twistor",
                                                   "mu-connection", "weyl-flat", "swann",   "pontecorvo",
                                                   "grassmann", "tcpn",       "chern"};
    return names;
}

std::vector<VerificationReport> run_suite(const SuiteConfig& cfg, const std::string& suite) {
    cfg.validate();
    static const std::map<std::string, void (*)(SuiteRun&)> table = {
        {"algebra", suite_algebra},     {"connection", suite_connection},
        {"fixed-points", suite_fixed_points}, {"twistor", suite_twistor},
        {"mu-connection", suite_mu_connection}, {"weyl-flat", suite_weyl_flat},
        {"swann", suite_swann},         {"pontecorvo", suite_pontecorvo},
        {"grassmann", suite_grassmann}, {"tcpn", suite_tcpn},
        {"chern", suite_chern}};
    std::vector<VerificationReport> out;
    if (suite == "all") {
        for (const auto& name : registered_suites()) {
            auto part = run_suite(cfg, name);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    auto it = table.find(suite);
    if (it == table.end()) throw UsageError("unknown suite: " + suite);
    SuiteRun run(cfg, suite);
    it->second(run);
    return std::move(run.reports());
}

}  // namespace qgeom
