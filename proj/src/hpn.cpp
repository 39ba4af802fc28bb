#include "qgeom/hpn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>

namespace qgeom {

HPn::HPn(int n) : n_(n) {
    if (n < 1) throw DomainError("HPn: n must be at least 1");
    frame_ = standard_frame(n);
}

CircleAction::CircleAction(std::vector<int> w, int p) : weights(std::move(w)), pivot(p) {
    if (weights.size() < 2) throw DomainError("CircleAction: need at least two weights");
    if (pivot < 0 || pivot >= int(weights.size())) throw DomainError("CircleAction: pivot out of range");
    if (std::all_of(weights.begin(), weights.end(), [](int x) { return x == 0; }))
        throw DomainError("CircleAction: all weights zero gives the trivial action");
}

HVecd to_homogeneous(const VecD& q, int pivot) {
    const int n = int(q.size() / 4);
    HVecd z(n + 1);
    z[pivot] = unit_one<double>();
    for (int j = 0; j < n; ++j) z[j < pivot ? j : j + 1] = quat_at(q, j);
    return z;
}

VecD to_chart(const HVecd& z, int pivot) {
    const int n = int(z.size()) - 1;
    double total = 0.0;
    for (const auto& e : z) total += e.norm2();
    if (z[pivot].norm2() < 1e-12 * total) throw ChartEscape("point at infinity of the chart");
    Quatd inv = inverse(z[pivot]);
    VecD q(4 * n);
    for (int j = 0; j < n; ++j) set_quat(q, j, z[j < pivot ? j : j + 1] * inv);
    return q;
}

int best_pivot(const HVecd& z) {
    int best = 0;
    for (size_t l = 1; l < z.size(); ++l)
        if (z[l].norm2() > z[best].norm2()) best = int(l);
    return best;
}

HVecd normalize_rep(const HVecd& z) {
    double total = 0.0;
    for (const auto& e : z) total += e.norm2();
    double s = 1.0 / std::sqrt(total);
    HVecd out = z;
    for (auto& e : out) e = e * s;
    return out;
}

double proj_distance(const HVecd& a, const HVecd& b) {
    // |b - a <a, b>/|a|^2| / |b|, free of the cancellation in sqrt(1 - cos^2)
    Quatd h;
    double na = 0.0, nb = 0.0;
    for (size_t l = 0; l < a.size(); ++l) {
        h += conj(a[l]) * b[l];
        na += a[l].norm2();
        nb += b[l].norm2();
    }
    h = h * (1.0 / na);
    double r = 0.0;
    for (size_t l = 0; l < a.size(); ++l) r += (b[l] - a[l] * h).norm2();
    return std::sqrt(r / nb);
}

HVecd act_homogeneous(const HVecd& z, const std::vector<int>& weights, double theta) {
    HVecd out = z;
    for (size_t l = 0; l < z.size(); ++l) {
        double t = weights[l] * theta;
        out[l] = Quatd(std::cos(t), std::sin(t), 0.0, 0.0) * z[l];
    }
    return out;
}

VecD act_point(const CircleAction& a, const VecD& q, double theta) {
    return to_chart(act_homogeneous(to_homogeneous(q, a.pivot), a.weights, theta), a.pivot);
}

std::string kind_name(FixedKind k) {
    switch (k) {
        case FixedKind::Isolated: return "isolated";
        case FixedKind::Quaternionic: return "quaternionic";
        case FixedKind::TransversalComplex: return "transversal_complex";
    }
    return "unknown";
}

MatD kernel_basis(const MatD& a, double rel_tol) {
    Eigen::JacobiSVD<MatD> svd(a, Eigen::ComputeFullV);
    const VecD& s = svd.singularValues();
    double top = s.size() ? std::max(s[0], 1.0) : 1.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > rel_tol * top) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

MatD orthonormal_span(const MatD& a, double rel_tol) {
    Eigen::JacobiSVD<MatD> svd(a, Eigen::ComputeThinU);
    const VecD& s = svd.singularValues();
    double top = s.size() ? s[0] : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > rel_tol * std::max(top, 1e-300)) ++rank;
    return svd.matrixU().leftCols(rank);
}

VecD principal_angles(const MatD& a, const MatD& b) {
    MatD qa = orthonormal_span(a), qb = orthonormal_span(b);
    if (qb.cols() > qa.cols()) std::swap(qa, qb);
    const int k = int(qb.cols());
    VecD cosv = Eigen::JacobiSVD<MatD>(qa.transpose() * qb).singularValues();  // descending
    MatD resid = qb - qa * (qa.transpose() * qb);
    VecD sinv = Eigen::JacobiSVD<MatD>(resid).singularValues();  // descending
    VecD ang(k);
    for (int i = 0; i < k; ++i) {
        double c = i < cosv.size() ? cosv[i] : 0.0;
        double s = k - 1 - i < sinv.size() ? sinv[k - 1 - i] : 0.0;
        ang[i] = std::atan2(s, c);
    }
    return ang;
}

VecD polish_fixed_point(const CircleAction& a, const VecD& q0, int max_iter, double tol) {
    VecD q = q0;
    double lambda = 1e-3;
    const DerivEngine eng;
    VecD r = a(q);
    for (int it = 0; it < max_iter; ++it) {
        if (r.norm() <= tol * (1.0 + q.norm())) return q;
        MatD j = jacobian(a, q, eng);
        MatD jtj = j.transpose() * j;
        VecD g = j.transpose() * r;
        const double scale = std::max(jtj.diagonal().maxCoeff(), 1e-300);
        bool improved = false;
        for (int tries = 0; tries < 30 && !improved; ++tries) {
            MatD lhs = jtj + MatD::Identity(q.size(), q.size()) * (lambda * scale);
            VecD step = lhs.ldlt().solve(-g);
            VecD qn = q + step;
            VecD rn = a(qn);
            if (rn.norm() < r.norm()) {
                q = qn;
                r = rn;
                lambda = std::max(lambda * 0.1, 1e-15);
                improved = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved) break;
    }
    if (r.norm() <= tol * (1.0 + q.norm())) return q;
    throw ConvergenceFailure("fixed-point polish did not converge");
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int k) : parent(k) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Both points lie in some chart and the chord between them consists of zeros of X.
bool chord_linked(const CircleAction& a, const HVecd& za, const HVecd& zb, double tol) {
    const int n = a.n();
    for (int p = 0; p <= n; ++p) {
        if (za[p].norm2() < 0.05 || zb[p].norm2() < 0.05) continue;
        CircleAction ap = a.in_chart(p);
        VecD qa = to_chart(za, p), qb = to_chart(zb, p);
        bool ok = true;
        for (double t : {0.25, 0.5, 0.75}) {
            VecD q = (1.0 - t) * qa + t * qb;
            if (ap(q).norm() > tol * (1.0 + q.norm())) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

FixedSearchResult find_fixed_components(const HPn& m, const CircleAction& a, const FixedSearchOptions& opt) {
    const int n = m.n();
    require_dim(a.n(), n, "find_fixed_components: weights");
    std::mt19937_64 rng(opt.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    FixedSearchResult res;
    std::vector<HVecd> found;
    for (int s = 0; s < opt.seeds; ++s) {
        const int pivot = s % (n + 1);
        VecD q0(4 * n);
        for (int i = 0; i < q0.size(); ++i) q0[i] = normal(rng);
        try {
            VecD q = polish_fixed_point(a.in_chart(pivot), q0, opt.max_iter, opt.residual_tol);
            HVecd z = normalize_rep(to_homogeneous(q, pivot));
            bool dup = false;
            for (const auto& f : found)
                if (proj_distance(f, z) < opt.cluster_radius * 1e-3) {
                    dup = true;
                    break;
                }
            if (!dup) found.push_back(z);
        } catch (const ConvergenceFailure&) {
            ++res.failed_seeds;
        }
    }
    const int k = int(found.size());
    UnionFind uf(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (proj_distance(found[i], found[j]) < opt.cluster_radius || chord_linked(a, found[i], found[j], 1e-9))
                uf.join(i, j);
    std::vector<int> roots;
    for (int i = 0; i < k; ++i)
        if (uf.find(i) == i) roots.push_back(i);
    const auto& fr = m.frame_matrices();
    QFrame<double> frame{fr};
    for (int r : roots) {
        FixedComponent c;
        double lo = 1e300, hi = -1e300;
        int dim = -1;
        for (int i = 0; i < k; ++i) {
            if (uf.find(i) != r) continue;
            c.witnesses.push_back(found[i]);
            const int p = best_pivot(found[i]);
            CircleAction ap = a.in_chart(p);
            VecD q = to_chart(found[i], p);
            // At a zero of X the covariant derivative is the chart Jacobian for any connection.
            MatD j = jacobian(ap, q, DerivEngine{});
            double fq = q_norm(q_project(j, frame, n).q_part, n);
            lo = std::min(lo, fq);
            hi = std::max(hi, fq);
            int kd = int(kernel_basis(j).cols());
            dim = std::max(dim, kd);
        }
        c.dim = dim;
        c.fq_norm = hi;
        c.fq_spread = hi - lo;
        if (c.dim == 0)
            c.kind = FixedKind::Isolated;
        else if (hi < opt.fq_tol)
            c.kind = FixedKind::Quaternionic;
        else
            c.kind = FixedKind::TransversalComplex;
        res.components.push_back(std::move(c));
    }
    std::sort(res.components.begin(), res.components.end(),
              [](const FixedComponent& x, const FixedComponent& y) { return x.dim > y.dim; });
    return res;
}

}  // namespace qgeom
