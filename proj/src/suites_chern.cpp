#include "qgeom/chern.hpp"
#include "suite_util.hpp"

namespace qgeom {

void suite_chern(SuiteRun& run) {
    const int n = run.cfg().n;
    const int grid = run.cfg().grid;
    const auto& tol = run.cfg().tol;
    HPn m(n);
    ChernOptions opt;
    opt.grid = grid;
    opt.eng = run.eng();
    const int nodes = grid * grid;

    Theorem48Report rep;
    bool ok = true;
    try {
        rep = theorem_4_8_check(m, opt, run.cfg().samples_or(10), run.cfg().seed);
    } catch (const std::exception&) {
        ok = false;
    }
    auto guard = [ok](double v) { return ok ? v : std::numeric_limits<double>::infinity(); };
    run.check("c1(F)[line] = n + 1 (relative)", nodes, tol.integral_rel,
              [&] { return guard(std::abs(rep.c1_f - (n + 1.0)) / (n + 1.0)); });
    run.check("iota* c1(M)[line] = 2n (relative)", nodes, tol.integral_rel,
              [&] { return guard(std::abs(rep.c1_m - 2.0 * n) / (2.0 * n)); });
    run.check("2n c1(F) = (n+1) iota* c1(M) (relative defect)", nodes, tol.integral_rel, [&] { return guard(rep.defect); });
    run.check("n Tr(R^F_{X,Y} I) = (n+1) Ric^mu(I X, Y) and 2n Ric^F_I = (n+1) Ric^mu_I on F", run.cfg().samples_or(10),
              tol.curvature, [&] { return guard(std::max(rep.pointwise, rep.forms)); });
    run.check("grid refinement drift of both pairings", 4 * nodes, 2e-3, [&] {
        ChernOptions fine = opt;
        fine.grid = 2 * grid;
        double f = c1_pairing_F(m, fine), mm = c1_pairing_M_restricted(m, fine);
        return guard(std::max(std::abs(f - rep.c1_f) / std::abs(f), std::abs(mm - rep.c1_m) / std::abs(mm)));
    });
    run.check("iota* c1(M) unchanged under mu -> a mu, a = exp(c |q|^2/(1+|q|^2))", nodes, tol.integral_rel, [&] {
        ChernOptions g = opt;
        g.gauge.c = 0.7;
        return guard(std::abs(c1_pairing_M_restricted(m, g) - rep.c1_m) / std::abs(rep.c1_m));
    });
    run.check("iota* c1(M) unchanged under mu -> c mu", nodes, 1e-6, [&] {
        ChernOptions g = opt;
        g.scale = 3.5;
        return guard(std::abs(c1_pairing_M_restricted(m, g) - rep.c1_m));
    });
    if (n >= 2) {
        const int k = run.cfg().samples_or(10);
        run.check("n^2 sum Omega_a ^ Omega_a = Ric_I ^ Ric_I", k, tol.curvature,
                  [&] { return char4form_consistency(m, k, run.cfg().seed, opt.eng); });
    }
}

}  // namespace qgeom
