#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "qgeom/report.hpp"

using namespace qgeom;

namespace {

struct SuiteRunResult {
    std::vector<VerificationReport> reports;
    double seconds = 0.0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const SuiteRunResult& run_cached(const std::string& suite, int n) {
    static std::map<std::pair<std::string, int>, SuiteRunResult> cache;
    auto key = std::make_pair(suite, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SuiteConfig cfg;
    cfg.n = n;
    auto t0 = Clock::now();
    SuiteRunResult r;
    r.reports = run_suite(cfg, suite);
    r.seconds = seconds_since(t0);
    return cache.emplace(key, std::move(r)).first->second;
}

using Filter = std::function<bool(const VerificationReport&)>;

bool any(const VerificationReport&) { return true; }

struct Selection {
    std::string suite;
    int n;
    Filter keep = any;
};

struct Outcome {
    bool pass = true;
    int checks = 0;
    double worst_ratio = 0.0;  // max residual / tolerance
    std::string failed;
    double seconds = 0.0;
};

Outcome evaluate(const std::vector<Selection>& sel) {
    Outcome o;
    for (const auto& s : sel) {
        const SuiteRunResult& r = run_cached(s.suite, s.n);
        o.seconds += r.seconds;
        for (const auto& rep : r.reports) {
            if (!s.keep(rep)) continue;
            ++o.checks;
            if (rep.tolerance > 0.0) o.worst_ratio = std::max(o.worst_ratio, rep.max_residual / rep.tolerance);
            if (!rep.pass) {
                o.pass = false;
                if (o.failed.empty()) o.failed = s.suite + " n=" + std::to_string(s.n) + ": " + rep.anchor;
            }
        }
    }
    if (o.checks == 0) {
        o.pass = false;
        o.failed = "no checks selected";
    }
    return o;
}

bool on_f_check(const VerificationReport& r) {
    return r.anchor.find("on TF") != std::string::npos || r.anchor.find("off-F") != std::string::npos;
}

int failures = 0;

void line(int id, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << "criterion " << id << " [" << (pass ? "PASS" : "FAIL") << "] " << name << ": " << detail << std::endl;
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

void suite_criterion(int id, const std::string& name, const std::vector<Selection>& sel, double budget = 0.0,
                     const std::string& budget_what = "") {
    Outcome o;
    try {
        o = evaluate(sel);
    } catch (const std::exception& e) {
        line(id, name, false, std::string("exception: ") + e.what());
        return;
    }
    bool ok = o.pass;
    std::string detail = std::to_string(o.checks) + " checks, worst residual/tolerance " + fmt(o.worst_ratio) + ", " +
                         fmt(o.seconds) + " s";
    if (budget > 0.0) {
        const bool fast = o.seconds < budget;
        ok = ok && fast;
        detail += " (budget " + fmt(budget) + " s for " + budget_what + (fast ? ")" : ", exceeded)");
    }
    if (!o.failed.empty()) detail += "; first failure: " + o.failed;
    line(id, name, ok, detail);
}

struct CliRun {
    int code = -1;
    std::string out;
    double seconds = 0.0;
};

CliRun run_cli(const std::string& args) {
    CliRun r;
    const char* bin = std::getenv("QGEOM_BIN");
    if (!bin) return r;
    auto t0 = Clock::now();
    FILE* p = popen((std::string(bin) + " " + args + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace

int main() {
    suite_criterion(1, "algebra relations of the frame", {{"algebra", 1}, {"algebra", 2}});
    {
        // the single-suite runtime bound is checked separately from the n = 2 run
        Outcome o = evaluate({{"algebra", 1}});
        line(1, "algebra runtime", o.seconds < 1.0, fmt(o.seconds) + " s at n = 1 (budget 1 s)");
    }
    suite_criterion(2, "Levi-Civita connection of HP^n", {{"connection", 1}}, 0.0);
    suite_criterion(2, "Levi-Civita connection of HP^n", {{"connection", 2}}, 30.0, "n = 2");
    suite_criterion(3, "quaternionic Weyl curvature vanishes", {{"weyl-flat", 1}, {"weyl-flat", 2}});
    suite_criterion(4, "fixed points of the weights (1,...,1) action", {{"fixed-points", 1}, {"fixed-points", 2}});
    suite_criterion(5, "twistor function f_Q", {{"twistor", 1}, {"twistor", 2}});
    suite_criterion(6, "mu-connection",
                    {{"mu-connection", 1, [](const VerificationReport& r) { return !on_f_check(r); }},
                     {"mu-connection", 2, [](const VerificationReport& r) { return !on_f_check(r); }}});
    suite_criterion(7, "mu-connection along the fixed set",
                    {{"mu-connection", 1, on_f_check}, {"mu-connection", 2, on_f_check}});
    suite_criterion(8, "Chern pairings, n = 1", {{"chern", 1}});
    suite_criterion(8, "Chern pairings, n = 2", {{"chern", 2}}, 120.0, "n = 2");
    suite_criterion(9, "Swann bundle lift", {{"swann", 1}, {"swann", 2}});
    suite_criterion(10, "quotient examples",
                    {{"pontecorvo", 1}, {"grassmann", 1}, {"grassmann", 2}, {"tcpn", 2}, {"tcpn", 3}});

    {
        CliRun a = run_cli("verify all --n 1 --seed 42");
        CliRun b = run_cli("verify all --n 1 --seed 42");
        std::string detail;
        bool ok = true;
        if (a.code < 0) {
            ok = false;
            detail = "could not run the qgeom binary (QGEOM_BIN unset?)";
        } else {
            const bool same = a.out == b.out && !a.out.empty();
            const bool fast = std::max(a.seconds, b.seconds) < 300.0;
            ok = same && fast && a.code == 0 && b.code == 0;
            detail = std::string(same ? "identical" : "DIFFERENT") + " JSON (" + std::to_string(a.out.size()) +
                     " bytes), exit codes " + std::to_string(a.code) + "/" + std::to_string(b.code) + ", " +
                     fmt(a.seconds) + " s and " + fmt(b.seconds) + " s (budget 300 s)";
        }
        line(11, "determinism of verify all --n 1 --seed 42", ok, detail);
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion line(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
