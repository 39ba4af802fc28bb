#pragma once

#include <chrono>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qgeom/hpn.hpp"
#include "qgeom/parallel.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

class SuiteRun {
public:
    SuiteRun(const SuiteConfig& cfg, std::string suite) : cfg_(cfg), suite_(std::move(suite)), rng_(stream_seed()) {}

    const SuiteConfig& cfg() const { return cfg_; }
    DerivEngine eng() const { return cfg_.deriv_engine(); }
    std::mt19937_64& rng() { return rng_; }
    std::vector<VerificationReport>& reports() { return reports_; }

    // fn() returns the max residual; a thrown exception fails the check.
    template <class F>
    void check(const std::string& anchor, int samples, double tolerance, F&& fn) {
        VerificationReport r;
        r.suite = suite_;
        r.anchor = anchor;
        r.samples = samples;
        r.tolerance = tolerance;
        r.seed = cfg_.seed;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.max_residual = fn();
            r.pass = r.max_residual <= tolerance;
        } catch (const std::exception&) {
            r.max_residual = std::numeric_limits<double>::max();
            r.pass = false;
        }
        if (!std::isfinite(r.max_residual)) {
            r.max_residual = std::numeric_limits<double>::max();
            r.pass = false;
        }
        if (cfg_.timing)
            r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        reports_.push_back(std::move(r));
    }

    VecD gaussian(int d, double scale) {
        std::normal_distribution<double> nd(0.0, 1.0);
        VecD v(d);
        for (int i = 0; i < d; ++i) v[i] = scale * nd(rng_);
        return v;
    }
    std::vector<VecD> gaussians(int count, int d, double scale) {
        std::vector<VecD> out;
        for (int i = 0; i < count; ++i) out.push_back(gaussian(d, scale));
        return out;
    }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

private:
    std::uint64_t stream_seed() const {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : suite_) h = (h ^ std::uint64_t(static_cast<unsigned char>(c))) * 1099511628211ull;
        return cfg_.seed ^ h;
    }

    const SuiteConfig& cfg_;
    std::string suite_;
    std::mt19937_64 rng_;
    std::vector<VerificationReport> reports_;
};

// max over i of f(i), evaluated concurrently, reduced in index order
template <class F>
double max_over(int count, F&& f) {
    std::vector<double> vals(count, 0.0);
    parallel_for(count, [&](int i) { vals[i] = f(i); });
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
    return m;
}

// Random point of C^n in chart coordinates: quaternion slots (a, b, 0, 0).
inline VecD complex_point(SuiteRun& run, int n, double scale) {
    VecD q = VecD::Zero(4 * n);
    VecD g = run.gaussian(2 * n, scale);
    for (int l = 0; l < n; ++l) {
        q[4 * l] = g[2 * l];
        q[4 * l + 1] = g[2 * l + 1];
    }
    return q;
}

// Coordinate basis of T(C^n) in the chart.
inline MatD complex_tangent(int n) {
    MatD t = MatD::Zero(4 * n, 2 * n);
    for (int l = 0; l < n; ++l) {
        t(4 * l, 2 * l) = 1.0;
        t(4 * l + 1, 2 * l + 1) = 1.0;
    }
    return t;
}

void suite_algebra(SuiteRun& run);
void suite_connection(SuiteRun& run);
void suite_weyl_flat(SuiteRun& run);
void suite_fixed_points(SuiteRun& run);
void suite_twistor(SuiteRun& run);
void suite_mu_connection(SuiteRun& run);
void suite_swann(SuiteRun& run);
void suite_pontecorvo(SuiteRun& run);
void suite_grassmann(SuiteRun& run);
void suite_tcpn(SuiteRun& run);
void suite_chern(SuiteRun& run);

}  // namespace qgeom
