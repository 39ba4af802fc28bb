#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeom/chern.hpp"
#include "qgeom/report.hpp"
#include "qgeom/swann.hpp"

using namespace qgeom;

namespace {

// "1", "-0.5", "2i", "1+2i", "-i"
cplx parse_complex(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?[0-9.eE]+(?![0-9.eE]*i))?\s*(([+-]?)([0-9.eE]*)i)?\s*$)");
    std::smatch mt;
    if (s.empty() || !std::regex_match(s, mt, re)) throw UsageError("bad complex number: " + s);
    double re_part = mt[1].matched ? std::stod(mt[1].str()) : 0.0;
    double im_part = 0.0;
    if (mt[2].matched) {
        std::string mag = mt[4].str();
        im_part = mag.empty() ? 1.0 : std::stod(mag);
        if (mt[3].str() == "-") im_part = -im_part;
    }
    if (!mt[1].matched && !mt[2].matched) throw UsageError("bad complex number: " + s);
    return {re_part, im_part};
}

CVec parse_csv(const std::string& s) {
    std::vector<cplx> vals;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) vals.push_back(parse_complex(item));
    if (vals.empty()) throw UsageError("empty vector");
    CVec v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of quaternionic geometry on HP^n"};
    app.require_subcommand(1);

    SuiteConfig cli;
    std::string suite, report = "json", out, config, engine = "dual";

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    auto* o_n = verify->add_option("--n", cli.n, "quaternionic dimension");
    auto* o_seed = verify->add_option("--seed", cli.seed, "random seed");
    auto* o_samples = verify->add_option("--samples", cli.samples, "samples per check (0: defaults)");
    auto* o_engine = verify->add_option("--engine", engine, "fd or dual");
    auto* o_step = verify->add_option("--fd-step", cli.fd_step, "relative finite-difference step");
    auto* o_grid = verify->add_option("--grid", cli.grid, "quadrature nodes per axis");
    verify->add_option("--report", report, "json or md")->check(CLI::IsMember({"json", "md"}));
    verify->add_option("--out", out, "output path (default stdout)");
    verify->add_option("--config", config, "key = value config file");
    auto* o_timing = verify->add_flag("--timing", cli.timing, "record wall time per check");

    std::string u_csv, v_csv;
    auto* cls = app.add_subcommand("classify", "classify a point z = u + j v of H^{n+1}");
    cls->add_option("u", u_csv, "comma separated complex entries")->required();
    cls->add_option("v", v_csv, "comma separated complex entries")->required();

    int chern_n = 1, chern_grid = 64;
    auto* chern = app.add_subcommand("chern", "pair c1(F) and c1(M) with a projective line of F");
    chern->add_option("--n", chern_n, "quaternionic dimension");
    chern->add_option("--grid", chern_grid, "quadrature nodes per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            SuiteConfig cfg = config.empty() ? SuiteConfig{} : load_config_file(config);
            if (o_n->count()) cfg.n = cli.n;
            if (o_seed->count()) cfg.seed = cli.seed;
            if (o_samples->count()) cfg.samples = cli.samples;
            if (o_step->count()) cfg.fd_step = cli.fd_step;
            if (o_grid->count()) cfg.grid = cli.grid;
            if (o_timing->count()) cfg.timing = true;
            if (o_engine->count()) apply_config_entry(cfg, "engine", engine);
            cfg.validate();
            if (suite != "all" && std::find(registered_suites().begin(), registered_suites().end(), suite) ==
                                      registered_suites().end())
                throw UsageError("unknown suite: " + suite);
            auto reports = run_suite(cfg, suite);
            std::string doc = report == "md" ? emit_markdown(reports) : emit_json(reports);
            if (out.empty()) {
                std::cout << doc;
            } else {
                std::ofstream f(out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot write " + out);
                f << doc;
            }
            return all_pass(reports) ? 0 : 1;
        }
        if (*cls) {
            SpherePoint z(parse_csv(u_csv), parse_csv(v_csv));
            std::cout << zero_set_name(classify(z).label) << "\n";
            return 0;
        }
        if (*chern) {
            if (chern_n < 1 || chern_grid < 2) throw UsageError("chern: need n >= 1 and grid >= 2");
            HPn m(chern_n);
            ChernOptions opt;
            opt.grid = chern_grid;
            Theorem48Report r = theorem_4_8_check(m, opt, 10, 42);
            const bool pass = r.defect < 1e-2 && std::abs(r.c1_f - (chern_n + 1.0)) < 1e-2 * (chern_n + 1.0) &&
                              std::abs(r.c1_m - 2.0 * chern_n) < 1e-2 * (2.0 * chern_n);
            nlohmann::ordered_json j;
            j["n"] = chern_n;
            j["grid"] = chern_grid;
            j["c1_F"] = r.c1_f;
            j["c1_M_restricted"] = r.c1_m;
            j["relation_defect"] = r.defect;
            j["pointwise_residual"] = std::max(r.pointwise, r.forms);
            j["pass"] = pass;
            std::cout << j.dump(2) << "\n";
            return pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
