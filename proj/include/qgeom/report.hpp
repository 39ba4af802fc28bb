#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgeom/engine.hpp"

namespace qgeom {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationReport {
    std::string suite;
    std::string anchor;  // name of the identity checked
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::int64_t millis = 0;
};

struct Tolerances {
    double first_deriv = 1e-4;
    double curvature = 1e-3;
    double integral_rel = 1e-2;
};

struct SuiteConfig {
    int n = 1;
    std::uint64_t seed = 42;
    int samples = 0;  // 0: per-check defaults
    double fd_step = 1e-5;
    EngineMode engine = EngineMode::Dual;
    Tolerances tol;
    int grid = 64;
    bool timing = false;

    void validate() const;  // throws UsageError
    DerivEngine deriv_engine() const;
    int samples_or(int fallback) const { return samples > 0 ? samples : fallback; }
};

// key = value lines, '#' comments, optional quotes around values.
void apply_config_entry(SuiteConfig& cfg, const std::string& key, const std::string& value);
SuiteConfig load_config_file(const std::string& path, SuiteConfig base = {});

std::string emit_json(const std::vector<VerificationReport>& reports);
std::string emit_markdown(const std::vector<VerificationReport>& reports);

const std::vector<std::string>& registered_suites();  // without "all"
std::vector<VerificationReport> run_suite(const SuiteConfig& cfg, const std::string& suite);
bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace qgeom
