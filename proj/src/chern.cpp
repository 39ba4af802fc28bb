#include "qgeom/chern.hpp"

#include <random>

namespace qgeom {

namespace {

std::vector<int> f_indices(int n) {
    std::vector<int> idx;
    for (int l = 0; l < n; ++l) {
        idx.push_back(4 * l);
        idx.push_back(4 * l + 1);
    }
    return idx;
}

bool on_f(const VecD& q) {
    for (Eigen::Index i = 0; i < q.size(); ++i)
        if (i % 4 >= 2 && q[i] != 0.0) return false;
    return true;
}

MatD ric_f_from(const CurvatureTensor<double>& r, int n) {
    const int d = r.d;
    MatD ric = MatD::Zero(d, d);
    for (int a : f_indices(n))
        for (int j = 0; j < d; ++j) ric.row(j) += r.r[a][j].row(a);
    return ric;
}

}  // namespace

MuDatum make_mu_datum(const HPn& m, const ChernOptions& opt) {
    const int n = m.n();
    auto lc = hpn_levi_civita_closed(m);
    ScaledMu mu{fq_field(lc, CircleAction::uniform(n), HPnFrame{&m}, n, opt.eng), opt.gauge, opt.scale};
    return make_twistor(modify_connection(lc, opt.gauge, HPnFrame{&m}), mu, HPnFrame{&m}, n, opt.eng);
}

VecD LineCycle::operator()(const VecD& st) const { return operator()<double>(st); }

MatD ric_f(const HPn& m, const VecD& q, const DerivEngine& eng) {
    if (!on_f(q)) throw DomainError("ric_f: point is not on F");
    return ric_f_from(curvature_tensor(hpn_levi_civita_closed(m), q, eng), m.n());
}

MatD ric_mu(const HPn& m, const VecD& q, const ChernOptions& opt) {
    MuDatum td = make_mu_datum(m, opt);
    return ricci(curvature_tensor(mu_connection(td), q, opt.eng));
}

MatD mu_unit(const HPn& m, const VecD& q, const ChernOptions& opt) {
    MuDatum td = make_mu_datum(m, opt);
    return td.mu(q) / td.mu_norm(q);
}

double c1_pairing_F(const HPn& m, const ChernOptions& opt) {
    LineCycle cyc{m.n()};
    auto form = [&](const VecD& p, const VecD& a, const VecD& b) {
        MatD i1 = mu_unit(m, p, opt);
        return -a.dot(ric_f(m, p, opt.eng) * i1 * b) / (2.0 * M_PI);
    };
    return integrate_2form(form, cyc, cyc.domain(), opt.grid, opt.grid, opt.eng);
}

double c1_pairing_M_restricted(const HPn& m, const ChernOptions& opt) {
    LineCycle cyc{m.n()};
    MuDatum td = make_mu_datum(m, opt);
    auto conn = mu_connection(td);
    auto form = [&](const VecD& p, const VecD& a, const VecD& b) {
        MatD ric = ricci(curvature_tensor(conn, p, opt.eng));
        MatD i1 = td.mu(p) / td.mu_norm(p);
        return -a.dot(ric * i1 * b) / (2.0 * M_PI);
    };
    return integrate_2form(form, cyc, cyc.domain(), opt.grid, opt.grid, opt.eng);
}

Theorem48Report theorem_4_8_check(const HPn& m, const ChernOptions& opt, int samples, std::uint64_t seed) {
    const int n = m.n(), d = m.dim();
    Theorem48Report rep;
    rep.c1_f = c1_pairing_F(m, opt);
    rep.c1_m = c1_pairing_M_restricted(m, opt);
    rep.defect = std::abs(2.0 * n * rep.c1_f - (n + 1.0) * rep.c1_m) / std::abs(rep.c1_m);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const auto idx = f_indices(n);
    MuDatum td = make_mu_datum(m, opt);
    auto conn = mu_connection(td);
    for (int s = 0; s < samples; ++s) {
        VecD q = VecD::Zero(d), x = VecD::Zero(d), y = VecD::Zero(d);
        for (int i : idx) {
            q[i] = 0.7 * nd(rng);
            x[i] = nd(rng);
            y[i] = nd(rng);
        }
        CurvatureTensor<double> rg = curvature_tensor(hpn_levi_civita_closed(m), q, opt.eng);
        MatD ricm = ricci(curvature_tensor(conn, q, opt.eng));
        MatD rf = ric_f_from(rg, n);
        MatD i1 = td.mu(q) / td.mu_norm(q);
        MatD rxy = rg.eval(x, y);
        MatD ri = rxy * i1;
        double tr = 0.0;
        for (int a : idx) tr += ri(a, a);
        double rhs = (i1 * x).dot(ricm * y);
        rep.pointwise = std::max(rep.pointwise, std::abs(n * tr - (n + 1.0) * rhs));
        double lf = x.dot(rf * i1 * y), lm = x.dot(ricm * i1 * y);
        rep.forms = std::max(rep.forms, std::abs(2.0 * n * lf - (n + 1.0) * lm));
    }
    return rep;
}

double char4form_consistency(const HPn& m, int samples, std::uint64_t seed, const DerivEngine& eng) {
    const int n = m.n(), d = m.dim();
    ChernOptions opt;
    opt.eng = eng;
    MuDatum td = make_mu_datum(m, opt);
    auto conn = mu_connection(td);
    AdaptedFrame<MuDatum> af{&td};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        VecD q(d);
        for (int i = 0; i < d; ++i) q[i] = 0.6 * nd(rng);
        CurvatureTensor<double> r = curvature_tensor(conn, q, eng);
        QFrame<double> f = af(q);
        auto om = omega_forms(r, f, n);
        MatD ric_i = ricci(r) * f.I[0];
        std::array<VecD, 4> v;
        for (auto& e : v) {
            e.resize(d);
            for (int i = 0; i < d; ++i) e[i] = nd(rng);
        }
        double theta = char4form(om, v[0], v[1], v[2], v[3]);
        double rr = wedge_square(ric_i, v[0], v[1], v[2], v[3]);
        worst = std::max(worst, std::abs(n * n * theta - rr) / std::max(1.0, std::abs(theta)));
    }
    return worst;
}

}  // namespace qgeom
