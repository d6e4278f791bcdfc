// mapcones CLI: classify maps against positivity cones, evolve semigroups,
// locate cone entry times, build/decompose Lindblad-form generators, and run
// generator-vs-trajectory consistency checks.
//
// Exit codes: 0 success, 2 parse/config error, 3 dimension mismatch,
// 4 unsupported construction, 5 numeric failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mapcones/json_io.hpp"

using namespace mapcones;

namespace {

struct RunConfig {
    std::string input;
    std::string cones = "cp";
    int samples = 20000;
    uint64_t seed = 42;
    double tol = 1e-9;
    double t0 = 1e-3;
    double t1 = 100.0;
    int steps = 50;
    std::string scale = "log";
    std::string out;
    std::string format;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open input file '" + path + "'");
    return json::parse(in);  // nlohmann reports byte positions on failure
}

void require_format(const RunConfig& cfg, const std::string& natural) {
    if (!cfg.format.empty() && cfg.format != natural)
        throw schema_error("this subcommand emits " + natural + ", not '" + cfg.format + "'");
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw schema_error("cannot open output file '" + cfg.out + "'");
    out << text;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> time_grid(const RunConfig& cfg) {
    if (cfg.steps < 1) throw schema_error("--steps must be at least 1");
    if (!(cfg.t1 > cfg.t0)) throw schema_error("--t1 must exceed --t0");
    std::vector<double> ts;
    if (cfg.steps == 1) {
        ts.push_back(cfg.t0);
        return ts;
    }
    if (cfg.scale == "linear") {
        for (int i = 0; i < cfg.steps; ++i)
            ts.push_back(cfg.t0 + (cfg.t1 - cfg.t0) * i / (cfg.steps - 1));
    } else if (cfg.scale == "log") {
        if (!(cfg.t0 > 0.0)) throw schema_error("log scale requires --t0 > 0");
        for (int i = 0; i < cfg.steps; ++i)
            ts.push_back(cfg.t0 * std::pow(cfg.t1 / cfg.t0, double(i) / (cfg.steps - 1)));
    } else {
        throw schema_error("--scale must be 'linear' or 'log'");
    }
    return ts;
}

struct ConeRequest {
    std::string token;
    int k = 0;  // 0 = exact cone (cp/ppt/eb)
};

std::vector<ConeRequest> parse_cones(const std::string& list, int n) {
    std::vector<ConeRequest> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ConeRequest r;
        r.token = tok;
        if (tok == "cp" || tok == "ppt" || tok == "eb") {
            out.push_back(r);
            continue;
        }
        if (tok == "pm") {
            r.k = 1;
            out.push_back(r);
            continue;
        }
        if (tok.size() >= 2 && tok[0] == 'p') {
            int k = std::atoi(tok.c_str() + 1);
            if (k >= 1 && k <= n) {
                r.k = k;
                out.push_back(r);
                continue;
            }
            throw schema_error("cone token '" + tok + "' out of range for n = " +
                               std::to_string(n));
        }
        throw schema_error("unknown cone token '" + tok + "' (expected cp, ppt, eb, pm or p<k>)");
    }
    if (out.empty()) throw schema_error("--cones selected no cone");
    return out;
}

int cmd_classify(const RunConfig& cfg) {
    require_format(cfg, "json");
    SuperOp s = superop_from_json(read_json_file(cfg.input));
    json report;
    report["input"] = cfg.input;
    report["n"] = s.n();
    json diag;
    diag["hermiticity_preserving"] = s.is_hermiticity_preserving();
    diag["unital"] = s.is_unital();
    diag["trace_preserving"] = s.is_trace_preserving();
    report["diagnostics"] = std::move(diag);

    json verdicts = json::array();
    uint64_t child = 0;
    for (const ConeRequest& req : parse_cones(cfg.cones, s.n())) {
        ConeVerdict v;
        if (req.token == "cp")
            v = is_cp(s, cfg.tol);
        else if (req.token == "ppt")
            v = is_ppt(s, cfg.tol);
        else if (req.token == "eb")
            v = is_eb(s, cfg.tol);
        else {
            WitnessOptions opts;
            opts.samples = cfg.samples;
            opts.tol = cfg.tol;
            opts.seed = Seed{cfg.seed}.child(child);
            v = is_k_positive_witnessed(s, req.k, opts);
        }
        ++child;
        verdicts.push_back(verdict_to_json(v));
    }
    report["verdicts"] = std::move(verdicts);
    write_output(cfg, report.dump(2));
    return 0;
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

int cmd_evolve(const RunConfig& cfg) {
    require_format(cfg, "csv");
    GeneratorInput gen = generator_from_json(read_json_file(cfg.input));
    std::vector<double> ts = time_grid(cfg);
    std::ostringstream csv;
    if (gen.family) {
        csv << "t,coefP,coefD,coefT,coefId,min_choi_eig,ppt_min_eig,cp,ppt,eb\n";
        for (double t : ts) {
            FamilyParams at = evolve_family(*gen.family, t);
            const double mc = family_min_choi_eig(at);
            const double mp = family_ppt_min_eig(at);
            const bool cp = is_cp_family(at);
            const bool ppt = is_ppt_family(at);
            std::string eb = at.n == 2 ? bool_cell(is_eb_family(at))
                                       : (ppt ? std::string("unknown") : std::string("false"));
            csv << fmt17(t) << "," << fmt17(at.alpha) << "," << fmt17(at.beta) << ","
                << fmt17(at.gamma) << "," << fmt17(at.delta) << "," << fmt17(mc) << ","
                << fmt17(mp) << "," << bool_cell(cp) << "," << bool_cell(ppt) << "," << eb
                << "\n";
        }
    } else {
        csv << "t,min_choi_eig,ppt_min_eig,cp,ppt,eb\n";
        CMatrix nat = gen.map.natural();
        for (double t : ts) {
            SuperOp at = SuperOp::from_natural(gen.n, expm(nat * cplx(t, 0.0)));
            const double mc = min_eigenvalue((at.choi() + at.choi().adjoint()) * cplx(0.5, 0.0));
            CMatrix pt = partial_transpose(at.choi(), PtSide::Second);
            const double mp = min_eigenvalue((pt + pt.adjoint()) * cplx(0.5, 0.0));
            const double scale = 1.0 + std::max(std::abs(mc), std::abs(mp));
            const bool cp = mc >= -cfg.tol * scale;
            const bool ppt = cp && mp >= -cfg.tol * scale;
            std::string eb = gen.n == 2 ? bool_cell(ppt)
                                        : (ppt ? std::string("unknown") : std::string("false"));
            csv << fmt17(t) << "," << fmt17(mc) << "," << fmt17(mp) << "," << bool_cell(cp)
                << "," << bool_cell(ppt) << "," << eb << "\n";
        }
    }
    write_output(cfg, csv.str());
    return 0;
}

int cmd_entry_time(const RunConfig& cfg, const std::string& cone, double bis_tol) {
    require_format(cfg, "json");
    GeneratorInput gen = generator_from_json(read_json_file(cfg.input));
    if (!gen.family)
        throw unsupported_construction(
            "entry-time requires a family generator (rep \"family\"); general generators have "
            "no exact cone predicate");
    EntryTimeResult r =
        entry_time(*gen.family, parse_family_cone(cone), cfg.t0, cfg.t1, bis_tol);
    json out = entry_time_to_json(r);
    out["generator"] =
        json::array({gen.family->alpha, gen.family->beta, gen.family->gamma, gen.family->delta});
    out["n"] = gen.family->n;
    write_output(cfg, out.dump(2));
    return 0;
}

int cmd_gksl_build(const RunConfig& cfg) {
    require_format(cfg, "json");
    json j = read_json_file(cfg.input);
    if (!j.contains("kind") || j["kind"] != "gksl")
        throw schema_error("gksl build expects a {\"kind\":\"gksl\"} document");
    GeneratorInput gen = generator_from_json(j);
    json out = superop_to_json(gen.map, "choi");
    out["unital_generator"] = gen.map.is_zero_on_identity();
    out["cp_generator"] = is_cp_generator(gen.map, cfg.tol);
    write_output(cfg, out.dump(2));
    return 0;
}

int cmd_gksl_decompose(const RunConfig& cfg) {
    require_format(cfg, "json");
    GeneratorInput gen = generator_from_json(read_json_file(cfg.input));
    GKSLData g = gksl_decompose(gen.map);
    SuperOp rebuilt = build_gksl(g);
    json out = gksl_to_json(gen.n, g);
    out["residual"] = superop_distance(rebuilt, gen.map);
    write_output(cfg, out.dump(2));
    return 0;
}

int cmd_schoenberg(const RunConfig& cfg, const std::string& cone) {
    require_format(cfg, "json");
    IdempotentPair pair = pair_from_json(read_json_file(cfg.input));
    const int n = pair.t0.n();
    int k;
    if (cone == "cp")
        k = n;
    else if (cone.size() >= 2 && cone[0] == 'p')
        k = std::atoi(cone.c_str() + 1);
    else
        throw schema_error("--cone must be cp or p<k> for schoenberg");
    if (k < 1 || k > n) throw schema_error("cone '" + cone + "' out of range for n");

    WitnessOptions opts;
    opts.samples = cfg.samples;
    opts.tol = cfg.tol;
    opts.seed = Seed{cfg.seed}.child(0);
    ConeVerdict generator_verdict = conditional_positivity(pair, k, opts);

    // empirical grid check on the trajectory
    const bool exact = (k == n);
    std::vector<double> ts = time_grid(cfg);
    std::vector<double> witness_times;
    uint64_t child = 1;
    for (double t : ts) {
        SuperOp at = exp_idempotent(pair, t);
        bool leaves;
        if (exact) {
            leaves = is_cp(at, cfg.tol).status == ConeStatus::NotMember;
        } else {
            WitnessOptions gopts;
            gopts.samples = std::max(512, cfg.samples / 8);
            gopts.restarts = 6;
            gopts.tol = cfg.tol;
            gopts.seed = Seed{cfg.seed}.child(child);
            if (generator_verdict.witness) gopts.starts.push_back(*generator_verdict.witness);
            leaves = is_k_positive_witnessed(at, k, gopts).status == ConeStatus::NotMember;
        }
        if (leaves) witness_times.push_back(t);
        ++child;
    }

    const bool generator_says_leaves = generator_verdict.status == ConeStatus::NotMember;
    const bool grid_says_leaves = !witness_times.empty();
    std::string agreement;
    if (generator_says_leaves == grid_says_leaves)
        agreement = "consistent";
    else if (exact)
        agreement = "MISMATCH (exact tests disagree; this indicates a defect)";
    else
        agreement = "inconclusive (sampled tests disagree)";

    json out;
    out["cone"] = (k == n) ? std::string("CP") : ("P_" + std::to_string(k));
    out["conditional_positivity"] = verdict_to_json(generator_verdict);
    json grid;
    grid["t0"] = cfg.t0;
    grid["t1"] = cfg.t1;
    grid["steps"] = cfg.steps;
    grid["witness_times"] = witness_times;
    out["grid"] = std::move(grid);
    out["agreement"] = agreement;
    if (agreement.rfind("MISMATCH", 0) == 0)
        std::cerr << "warning: generator-level and trajectory-level exact tests disagree\n";
    write_output(cfg, out.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mapcones: cones of positive maps on M_n and their semigroups"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string cone = "cp";
    double bis_tol = 1e-10;

    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        auto* opt = sub->add_option("--input", cfg.input, "input JSON document");
        if (needs_input) opt->required();
        sub->add_option("--samples", cfg.samples, "witness search samples");
        sub->add_option("--seed", cfg.seed, "root RNG seed");
        sub->add_option("--tol", cfg.tol, "membership tolerance");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "output format override");
        sub->add_option("--t0", cfg.t0, "grid / bracket start");
        sub->add_option("--t1", cfg.t1, "grid / bracket end");
        sub->add_option("--steps", cfg.steps, "grid point count");
        sub->add_option("--scale", cfg.scale, "grid scale: log | linear");
    };

    CLI::App* classify = app.add_subcommand("classify", "cone membership report for a map");
    add_common(classify);
    classify->add_option("--cones", cfg.cones, "comma list: cp, ppt, eb, pm, p<k>");

    CLI::App* evolve = app.add_subcommand("evolve", "CSV trajectory of exp(tL)");
    add_common(evolve);

    CLI::App* entry = app.add_subcommand("entry-time", "first time exp(tL) enters a cone");
    add_common(entry);
    entry->add_option("--cone", cone, "cp | eb | ppt");
    entry->add_option("--bisect-tol", bis_tol, "bisection width target");

    CLI::App* gksl = app.add_subcommand("gksl", "Lindblad-form generators");
    CLI::App* gksl_build_cmd = gksl->add_subcommand("build", "assemble a generator from (H, V)");
    add_common(gksl_build_cmd);
    CLI::App* gksl_dec_cmd =
        gksl->add_subcommand("decompose", "recover (H, V) from a generator");
    add_common(gksl_dec_cmd);
    gksl->require_subcommand(1);

    CLI::App* schoen = app.add_subcommand(
        "schoenberg", "generator-level vs trajectory-level cone verdicts for a semigroup pair");
    add_common(schoen);
    schoen->add_option("--cone", cone, "cp | p<k>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(cfg);
        if (evolve->parsed()) return cmd_evolve(cfg);
        if (entry->parsed()) return cmd_entry_time(cfg, cone, bis_tol);
        if (gksl->parsed()) {
            if (gksl_build_cmd->parsed()) return cmd_gksl_build(cfg);
            return cmd_gksl_decompose(cfg);
        }
        if (schoen->parsed()) return cmd_schoenberg(cfg, cone);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const schema_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const dimension_error& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 3;
    } catch (const unsupported_construction& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
