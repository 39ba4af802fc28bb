#include <cctype>
#include <fstream>
#include <sstream>

#include "qgeom/report.hpp"

namespace qgeom {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T out{};
    in >> out;
    if (in.fail() || !in.eof()) throw UsageError("config: bad value for " + key + ": " + value);
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw UsageError("config: bad boolean for " + key + ": " + value);
}

}  // namespace

void SuiteConfig::validate() const {
    if (n < 1) throw UsageError("n must be at least 1");
    if (samples < 0) throw UsageError("samples must be non-negative");
    if (!(fd_step > 0.0)) throw UsageError("fd_step must be positive");
    if (!(tol.first_deriv > 0.0) || !(tol.curvature > 0.0) || !(tol.integral_rel > 0.0))
        throw UsageError("tolerances must be positive");
    if (grid < 2) throw UsageError("grid must be at least 2");
}

DerivEngine SuiteConfig::deriv_engine() const {
    DerivEngine e;
    e.mode = engine;
    e.step = fd_step;
    return e;
}

void apply_config_entry(SuiteConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n")
        cfg.n = parse_number<int>(key, value);
    else if (key == "seed")
        cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "samples")
        cfg.samples = parse_number<int>(key, value);
    else if (key == "fd_step")
        cfg.fd_step = parse_number<double>(key, value);
    else if (key == "engine") {
        try {
            cfg.engine = parse_engine(value);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (key == "tol_first_deriv")
        cfg.tol.first_deriv = parse_number<double>(key, value);
    else if (key == "tol_curvature")
        cfg.tol.curvature = parse_number<double>(key, value);
    else if (key == "tol_integral_rel")
        cfg.tol.integral_rel = parse_number<double>(key, value);
    else if (key == "grid")
        cfg.grid = parse_number<int>(key, value);
    else if (key == "timing")
        cfg.timing = parse_bool(key, value);
    else
        throw UsageError("config: unknown key " + key);
}

SuiteConfig load_config_file(const std::string& path, SuiteConfig base) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config: line " + std::to_string(lineno) + " has no '='");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        apply_config_entry(base, key, value);
    }
    return base;
}

}  // namespace qgeom
