// Command-line front door: every computation of the library behind one
// binary with deterministic, config-embedding outputs.
//
// Exit codes: 0 = ok / all checks passed, 2 = an inequality or reproduction
// check failed, 1 = usage or runtime error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pharmonic/harmonic.hpp"
#include "pharmonic/inequalities.hpp"
#include "pharmonic/io.hpp"
#include "pharmonic/markov.hpp"
#include "pharmonic/repro.hpp"
#include "pharmonic/solver.hpp"

using nlohmann::json;
using namespace pharmonic;

namespace {

void emit(const std::string& path, const std::string& contents) {
    if (path.empty())
        std::cout << contents << "\n";
    else
        atomic_write_file(path, contents);
}

std::string with_config(const std::string& body, const json& config) {
    json doc = json::parse(body);
    doc["config"] = config;
    return doc.dump(2);
}

std::string csv_with_config(const std::string& body, const json& config) {
    return "# config: " + config.dump() + "\n" + body;
}

GraphFunction parse_input_function(const Group& group, std::shared_ptr<const CayleyBall> ball,
                                   const std::string& spec, std::uint64_t seed) {
    GraphFunction f;
    f.ball = ball;
    f.values.assign(ball->size(), 0.0);
    if (spec.rfind("clamp:", 0) == 0) {
        if (group.spec().family != GroupFamily::FreeAbelian || group.spec().rank != 1)
            throw CLI::ValidationError("--input clamp:M needs --group z^1");
        const double m = std::stod(spec.substr(6));
        for (std::size_t v = 0; v < ball->size(); ++v) {
            const double n = static_cast<double>(group.z_coordinate(ball->vertices[v]));
            f.values[v] = std::clamp(n, -m, m);
        }
    } else if (spec == "delta") {
        f.values[0] = 1.0;
        f.tail = Tail::Zero;
    } else if (spec == "random") {
        Rng rng(seed);
        for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
    } else if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw CLI::ValidationError("--input: cannot open " + spec.substr(5));
        json doc = json::parse(in);
        const auto vals = doc.at("values").get<std::vector<double>>();
        if (vals.size() != ball->size())
            throw CLI::ValidationError("--input file has " + std::to_string(vals.size()) +
                                       " values, ball has " + std::to_string(ball->size()));
        f.values = vals;
    } else {
        throw CLI::ValidationError("--input must be clamp:M, delta, random or file:PATH");
    }
    return f;
}

std::map<std::int32_t, double> parse_boundary(const Group& group, const CayleyBall& ball,
                                              const std::string& spec, std::uint64_t seed) {
    std::map<std::int32_t, double> bvals;
    if (spec == "random") {
        Rng rng(seed);
        for (std::int32_t v : ball.boundary) bvals[v] = rng.uniform(-1.0, 1.0);
    } else if (spec.rfind("const:", 0) == 0) {
        const double c = std::stod(spec.substr(6));
        for (std::int32_t v : ball.boundary) bvals[v] = c;
    } else if (spec == "ramp") {
        if (group.spec().family != GroupFamily::FreeAbelian || group.spec().rank != 1)
            throw CLI::ValidationError("--boundary ramp needs --group z^1");
        for (std::int32_t v : ball.boundary) {
            const double n = static_cast<double>(group.z_coordinate(ball.vertices[v]));
            bvals[v] = (n + ball.radius) / (2.0 * ball.radius);
        }
    } else {
        throw CLI::ValidationError("--boundary must be random, const:VALUE or ramp");
    }
    return bvals;
}

json solver_config(const SolverOptions& o) {
    return json{{"max_iters", o.max_iters},
                {"grad_tol", o.grad_tol},
                {"smoothing_eps", o.smoothing_eps},
                {"seed", o.seed}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete p-harmonic machinery on Cayley graphs"};
    app.set_config("--config");
    app.require_subcommand(1);

    std::string group_name = "z^1", out_path, out_csv, boundary = "random", input = "random";
    int radius = 10, kmax = 10, terms = 20, removal = 0, trials = 100, norm_iters = 1000;
    int emit_radius = -1, max_ball = 8, max_box = 12, random_sets = 100;
    double p = 2.0, pprime = 3.0, d = 2.0, t = 2.0, tail_eps = 0.02, tol_factor = 1.0;
    std::int64_t n_terms = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t budget = kDefaultVertexBudget;
    SolverOptions sopts;

    auto add_group = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_name, "z^d | free:k | heisenberg");
        cmd->add_option("--budget", budget, "vertex budget for ball construction");
    };
    auto add_solver = [&](CLI::App* cmd) {
        cmd->add_option("--max-iters", sopts.max_iters);
        cmd->add_option("--grad-tol", sopts.grad_tol);
        cmd->add_option("--smoothing-eps", sopts.smoothing_eps);
    };

    auto* cmd_ball = app.add_subcommand("ball", "materialize a Cayley ball as JSON");
    add_group(cmd_ball);
    cmd_ball->add_option("--radius", radius);
    cmd_ball->add_option("--out", out_path);

    auto* cmd_solve = app.add_subcommand("solve", "p-Dirichlet problem with clamped boundary");
    add_group(cmd_solve);
    cmd_solve->add_option("--radius", radius);
    cmd_solve->add_option("--p", p);
    cmd_solve->add_option("--boundary", boundary, "random | const:VALUE | ramp");
    cmd_solve->add_option("--seed", seed);
    add_solver(cmd_solve);
    cmd_solve->add_option("--out", out_path);

    auto* cmd_decompose = app.add_subcommand("decompose", "f = u + h with h p-harmonic");
    add_group(cmd_decompose);
    cmd_decompose->add_option("--radius", radius);
    cmd_decompose->add_option("--p", p);
    cmd_decompose->add_option("--input", input, "clamp:M | delta | random | file:PATH");
    cmd_decompose->add_option("--seed", seed);
    add_solver(cmd_decompose);
    cmd_decompose->add_option("--out", out_path);

    auto* cmd_harmonic = app.add_subcommand("harmonic", "nonconstant harmonic function via the "
                                                        "Neumann series on the free group");
    add_group(cmd_harmonic);
    cmd_harmonic->add_option("--p", p);
    cmd_harmonic->add_option("--radius", radius);
    cmd_harmonic->add_option("--removal-radius", removal);
    cmd_harmonic->add_option("--terms", terms, "truncation order K");
    cmd_harmonic->add_option("--norm-iters", norm_iters);
    cmd_harmonic->add_option("--emit-radius", emit_radius, "radius of the materialized CSV sample");
    cmd_harmonic->add_option("--csv", out_csv, "write h (materialized) as CSV here");
    cmd_harmonic->add_option("--out", out_path, "report JSON path (default stdout)");

    auto* cmd_folner = app.add_subcommand("folner", "boundary-to-volume profile");
    add_group(cmd_folner);
    cmd_folner->add_option("--kmax", kmax);
    cmd_folner->add_option("--p", p);
    cmd_folner->add_option("--out", out_path);

    auto* cmd_gerl = app.add_subcommand("gerl", "empirical ||u||_p <= C ||u||_D(p) constant");
    add_group(cmd_gerl);
    cmd_gerl->add_option("--radius", radius);
    cmd_gerl->add_option("--p", p);
    cmd_gerl->add_option("--trials", trials);
    cmd_gerl->add_option("--seed", seed);
    cmd_gerl->add_option("--out", out_path);

    auto* cmd_sobolev = app.add_subcommand("sobolev", "condition S_d, or the p-version when --p given");
    add_group(cmd_sobolev);
    cmd_sobolev->add_option("--radius", radius);
    cmd_sobolev->add_option("--d", d);
    auto* sobolev_p = cmd_sobolev->add_option("--p", p);
    cmd_sobolev->add_option("--trials", trials);
    cmd_sobolev->add_option("--seed", seed);
    cmd_sobolev->add_option("--out", out_path);

    auto* cmd_iso = app.add_subcommand("isoperimetric", "|A|^{d-1} vs C |dA|^d over set families");
    add_group(cmd_iso);
    cmd_iso->add_option("--d", d);
    cmd_iso->add_option("--max-ball", max_ball);
    cmd_iso->add_option("--max-box", max_box);
    cmd_iso->add_option("--random", random_sets);
    cmd_iso->add_option("--seed", seed);
    cmd_iso->add_option("--out", out_path);

    auto* cmd_mean = app.add_subcommand("meanvalue", "mean-value bound on random nonnegative samples");
    add_group(cmd_mean);
    cmd_mean->add_option("--radius", radius);
    cmd_mean->add_option("--t", t);
    cmd_mean->add_option("--trials", trials);
    cmd_mean->add_option("--seed", seed);
    cmd_mean->add_option("--out", out_path);

    auto* cmd_zex = app.add_subcommand("zexample", "the explicit f(n) = n^{-1/p} on Z");
    cmd_zex->add_option("--p", p);
    cmd_zex->add_option("--pprime", pprime);
    cmd_zex->add_option("--n", n_terms);
    cmd_zex->add_option("--tail-eps", tail_eps);
    cmd_zex->add_option("--out", out_path);

    auto* cmd_repro = app.add_subcommand("reproduce-all", "run the full acceptance battery");
    cmd_repro->add_option("--inject-solver-tol-factor", tol_factor,
                          "corrupt solver tolerances on purpose (testing the failure path)");
    cmd_repro->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cmd_ball)) {
            Group group(GroupSpec::parse(group_name));
            auto ball = build_ball(group, radius, budget);
            const json config{{"subcommand", "ball"}, {"group", group_name}, {"radius", radius}};
            emit(out_path, with_config(ball_to_json(group, *ball), config));
            return 0;
        }
        if (app.got_subcommand(cmd_solve)) {
            if (!(p > 1.0)) throw CLI::ValidationError("--p must be > 1 for the p-Laplacian");
            Group group(GroupSpec::parse(group_name));
            auto ball = build_ball(group, radius, budget);
            const auto bvals = parse_boundary(group, *ball, boundary, seed);
            const auto [h, report] = solve_dirichlet(ball, bvals, p, sopts);
            const json config{{"subcommand", "solve"},   {"group", group_name}, {"radius", radius},
                              {"p", p},                  {"boundary", boundary}, {"seed", seed},
                              {"solver", solver_config(sopts)}};
            json doc{{"h", h.values}, {"report", json::parse(solve_report_to_json(report))}};
            emit(out_path, with_config(doc.dump(), config));
            return 0;
        }
        if (app.got_subcommand(cmd_decompose)) {
            if (!(p > 1.0)) throw CLI::ValidationError("--p must be > 1 for the p-Laplacian");
            Group group(GroupSpec::parse(group_name));
            auto ball = build_ball(group, radius, budget);
            const GraphFunction f = parse_input_function(group, ball, input, seed);
            const Decomposition dec = royden_decompose(f, p, sopts);
            const json config{{"subcommand", "decompose"}, {"group", group_name}, {"radius", radius},
                              {"p", p},                    {"input", input},      {"seed", seed},
                              {"solver", solver_config(sopts)}};
            json doc{{"u", dec.u.values},
                     {"h", dec.h.values},
                     {"report", json::parse(solve_report_to_json(dec.report))}};
            emit(out_path, with_config(doc.dump(), config));
            return 0;
        }
        if (app.got_subcommand(cmd_harmonic)) {
            if (!(p > 1.0)) throw CLI::ValidationError("--p must be > 1");
            Group group(GroupSpec::parse(group_name));
            const HarmonicConstruction hc =
                construct_harmonic(group, p, radius, removal, terms, norm_iters);
            const json config{{"subcommand", "harmonic"},      {"group", group_name},
                              {"p", p},                        {"radius", radius},
                              {"removal_radius", removal},     {"terms", terms},
                              {"norm_iters", norm_iters}};
            json doc = json::parse(harmonic_report_to_json(hc.report));
            json profile = json::array();
            for (int b = 0; b < hc.h.branches; ++b) {
                json shell = json::array();
                for (int len = 1; len <= hc.h.max_len; ++len) shell.push_back(hc.h.at(b, len));
                profile.push_back({{"branch", group.generator_name(b)},
                                   {"far_field", hc.h.tail[b]},
                                   {"values", std::move(shell)}});
            }
            doc["h_origin"] = hc.h.origin;
            doc["h_profile"] = std::move(profile);
            emit(out_path, with_config(doc.dump(), config));
            if (!out_csv.empty()) {
                const int er = emit_radius >= 0 ? emit_radius : std::min(radius, 5);
                auto ball = build_ball(group, er, budget);
                const GraphFunction h = materialize(hc.h, group, ball);
                emit(out_csv, csv_with_config(function_to_csv(group, h), config));
            }
            return 0;
        }
        if (app.got_subcommand(cmd_folner)) {
            Group group(GroupSpec::parse(group_name));
            const auto records = folner_profile(group, kmax, p, budget);
            const json config{
                {"subcommand", "folner"}, {"group", group_name}, {"kmax", kmax}, {"p", p}};
            emit(out_path, csv_with_config(folner_records_to_csv(records), config));
            return 0;
        }
        if (app.got_subcommand(cmd_gerl)) {
            Group group(GroupSpec::parse(group_name));
            const InequalityReport report = gerl_ratio_search(group, radius, p, trials, seed, budget);
            const json config{{"subcommand", "gerl"}, {"group", group_name}, {"radius", radius},
                              {"p", p},               {"trials", trials},    {"seed", seed}};
            emit(out_path, with_config(inequality_report_to_json(report), config));
            return report.pass ? 0 : 2;
        }
        if (app.got_subcommand(cmd_sobolev)) {
            Group group(GroupSpec::parse(group_name));
            auto ball = build_ball(group, radius, budget);
            const InequalityReport report = (*sobolev_p) ? sobolev_pd_check(ball, p, d, trials, seed)
                                                         : sobolev_sd_check(ball, d, trials, seed);
            const json config{{"subcommand", "sobolev"}, {"group", group_name}, {"radius", radius},
                              {"d", d},                  {"trials", trials},    {"seed", seed}};
            emit(out_path, with_config(inequality_report_to_json(report), config));
            return report.pass ? 0 : 2;
        }
        if (app.got_subcommand(cmd_iso)) {
            Group group(GroupSpec::parse(group_name));
            IsoperimetricOptions iopts;
            iopts.max_ball_k = max_ball;
            iopts.max_box_n = max_box;
            iopts.random_sets = random_sets;
            iopts.seed = seed;
            iopts.budget = budget;
            const InequalityReport report = isoperimetric_check(group, d, iopts);
            const json config{{"subcommand", "isoperimetric"}, {"group", group_name}, {"d", d},
                              {"seed", seed}};
            emit(out_path, with_config(inequality_report_to_json(report), config));
            return report.pass ? 0 : 2;
        }
        if (app.got_subcommand(cmd_mean)) {
            if (!(t >= 2.0)) throw CLI::ValidationError("--t must be >= 2");
            Group group(GroupSpec::parse(group_name));
            auto ball = build_ball(group, radius, budget);
            const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
            int violations = 0;
            for (int tr = 0; tr < trials; ++tr) {
                Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(tr));
                const GraphFunction f = random_connected_function(ball, rng, max_support, true);
                if (!mean_value_bound_check(f, t).pass) ++violations;
            }
            const json config{{"subcommand", "meanvalue"}, {"group", group_name}, {"radius", radius},
                              {"t", t},                    {"trials", trials},    {"seed", seed}};
            json doc{{"trials", trials}, {"violations", violations}, {"pass", violations == 0}};
            emit(out_path, with_config(doc.dump(), config));
            return violations == 0 ? 0 : 2;
        }
        if (app.got_subcommand(cmd_zex)) {
            if (!(p > 1.0)) throw CLI::ValidationError("--p must be > 1");
            if (!(pprime > p)) throw CLI::ValidationError("--pprime must exceed --p");
            const ZExampleReport report = z_example(p, pprime, n_terms, tail_eps);
            const json config{{"subcommand", "zexample"}, {"p", p}, {"pprime", pprime},
                              {"n", n_terms},             {"tail_eps", tail_eps}};
            emit(out_path, with_config(z_example_to_json(report), config));
            return (report.in_dp && report.lp_diverging && report.lpp_cauchy) ? 0 : 2;
        }
        if (app.got_subcommand(cmd_repro)) {
            ReproOptions ropts;
            ropts.solver_tol_factor = tol_factor;
            if (cmd_repro->count("--seed")) ropts.seed = seed;
            const auto results = run_acceptance(
                ropts, [](const CriterionResult& r) { std::cout << format_result_line(r) << "\n"; });
            const bool ok = all_passed(results);
            std::cout << (ok ? "reproduce-all: all criteria passed\n"
                             : "reproduce-all: FAILURES present\n");
            return ok ? 0 : 2;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
