#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qgeom/report.hpp"

namespace qgeom {

std::string emit_json(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json o;
        o["suite"] = r.suite;
        o["anchor"] = r.anchor;
        o["samples"] = r.samples;
        o["max_residual"] = r.max_residual;
        o["tolerance"] = r.tolerance;
        o["pass"] = r.pass;
        o["seed"] = r.seed;
        o["millis"] = r.millis;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string emit_markdown(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "| suite | check | samples | max residual | tolerance | pass | seed | ms |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    char buf[64];
    for (const auto& r : reports) {
        out << "| " << r.suite << " | " << r.anchor << " | " << r.samples << " | ";
        std::snprintf(buf, sizeof buf, "%.3e", r.max_residual);
        out << buf << " | ";
        std::snprintf(buf, sizeof buf, "%.1e", r.tolerance);
        out << buf << " | " << (r.pass ? "yes" : "NO") << " | " << r.seed << " | " << r.millis << " |\n";
    }
    return out.str();
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace qgeom
