#pragma once

#include <cmath>
#include <vector>

#include "qgeom/engine.hpp"
#include "qgeom/parallel.hpp"

namespace qgeom {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int count);

struct Rect {
    double s0, s1, t0, t1;
};

// Integral over [s0,s1]x[t0,t1] of form(P, dP/ds, dP/dt) for a surface P(s, t) in a chart.
// form(x, u, v) must be a 2-form evaluated on (u, v).
template <class Surface, class Form>
double integrate_2form(const Form& form, const Surface& surf, const Rect& dom, int nodes_s, int nodes_t,
                       const DerivEngine& eng = {}) {
    GaussRule rs = gauss_legendre(nodes_s);
    GaussRule rt = gauss_legendre(nodes_t);
    const double hs = 0.5 * (dom.s1 - dom.s0), ht = 0.5 * (dom.t1 - dom.t0);
    std::vector<double> vals(size_t(nodes_s) * nodes_t);
    parallel_for(nodes_s * nodes_t, [&](int idx) {
        const int a = idx / nodes_t, b = idx % nodes_t;
        VecD st(2);
        st << dom.s0 + hs * (rs.nodes[a] + 1.0), dom.t0 + ht * (rt.nodes[b] + 1.0);
        VecD p = surf(st);
        VecD ps = partial(surf, st, 0, eng);
        VecD pt = partial(surf, st, 1, eng);
        vals[idx] = form(p, ps, pt);
    });
    // fixed-order reduction
    double total = 0.0;
    for (int a = 0; a < nodes_s; ++a)
        for (int b = 0; b < nodes_t; ++b) {
            double val = vals[size_t(a) * nodes_t + b];
            if (!std::isfinite(val)) throw NonFinite("integrate_2form: non-finite integrand");
            total += rs.weights[a] * rt.weights[b] * val;
        }
    return total * hs * ht;
}

}  // namespace qgeom
