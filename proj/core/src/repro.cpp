#include "pharmonic/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "pharmonic/harmonic.hpp"
#include "pharmonic/inequalities.hpp"
#include "pharmonic/io.hpp"
#include "pharmonic/linalg.hpp"
#include "pharmonic/markov.hpp"
#include "pharmonic/solver.hpp"

namespace pharmonic {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Independent p=2 route: assemble and solve the linear Laplacian system
// |S| h(x) - sum_{y~x interior} h(y) = sum_{y~x boundary} b(y) directly.
std::vector<double> laplace_dirichlet_solve(const CayleyBall& ball,
                                            const std::map<std::int32_t, double>& bvals) {
    const std::size_t n = ball.interior.size();
    std::vector<std::int32_t> pos(ball.size(), -1);
    for (std::size_t i = 0; i < n; ++i) pos[ball.interior[i]] = static_cast<std::int32_t>(i);

    std::vector<double> a(n * n, 0.0), b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t v = ball.interior[i];
        a[i * n + i] = ball.degree;
        for (int s = 0; s < ball.degree; ++s) {
            const std::int32_t w = ball.neighbor(v, s);
            if (pos[w] >= 0)
                a[i * n + pos[w]] -= 1.0;
            else
                b[i] += bvals.at(w);
        }
    }
    std::vector<double> x = cholesky_solve(std::move(a), std::move(b), n);

    std::vector<double> full(ball.size(), 0.0);
    for (auto& [v, val] : bvals) full[v] = val;
    for (std::size_t i = 0; i < n; ++i) full[ball.interior[i]] = x[i];
    return full;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void info(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

// ---- criterion 1: the explicit Z example ---------------------------------
CriterionResult criterion_1(const ReproOptions&) {
    CriterionResult r;
    r.index = 1;
    r.name = "z-example difference-sum bound (p=2, N=1e6)";
    Check c;
    const ZExampleReport big = z_example(2.0, 3.0, 1'000'000);
    const ZExampleReport small = z_example(2.0, 3.0, 100'000);
    c.require(big.diff_sum <= big.diff_bound,
              "diff sum " + fmt(big.diff_sum) + " > bound " + fmt(big.diff_bound));
    c.require(std::abs(big.diff_sum - small.diff_sum) <= 1e-3,
              "N=1e6 vs N=1e5 differ by " + fmt(std::abs(big.diff_sum - small.diff_sum)));
    c.info("diff_sum = " + fmt(big.diff_sum) + " <= " + fmt(big.diff_bound));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 2: p=2 solver vs direct linear solve ----------------------
CriterionResult criterion_2(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 2;
    r.name = "p=2 solver agrees with the linear-Laplacian solve (1e-8)";
    Check c;
    SolverOptions sopts;
    sopts.grad_tol = 1e-11 * opts.solver_tol_factor;
    sopts.max_iters = 200'000;

    struct Case {
        const char* group;
        int radius;
    } cases[] = {{"free:2", 4}, {"z^2", 10}};
    int salt = 0;
    for (const auto& cs : cases) {
        Group group(GroupSpec::parse(cs.group));
        auto ball = build_ball(group, cs.radius);
        Rng rng = Rng::for_trial(opts.seed, 100 + salt++);

        std::map<std::int32_t, double> bvals;
        for (std::int32_t v : ball->boundary) bvals[v] = rng.uniform(-1.0, 1.0);
        const auto [h, rep] = solve_dirichlet(ball, bvals, 2.0, sopts);
        const auto oracle = laplace_dirichlet_solve(*ball, bvals);
        const double dev_dirichlet = max_abs_diff(h.values, oracle);
        c.require(dev_dirichlet <= 1e-8,
                  std::string(cs.group) + " solve_dirichlet vs oracle " + fmt(dev_dirichlet));

        GraphFunction f = make_random(ball, rng);
        const Decomposition d = royden_decompose(f, 2.0, sopts);
        std::map<std::int32_t, double> fb;
        for (std::int32_t v : ball->boundary) fb[v] = f.values[v];
        const auto oracle_h = laplace_dirichlet_solve(*ball, fb);
        const double dev_royden = max_abs_diff(d.h.values, oracle_h);
        c.require(dev_royden <= 1e-8,
                  std::string(cs.group) + " royden_decompose vs oracle " + fmt(dev_royden));
        c.info(std::string(cs.group) + ": dirichlet " + fmt(dev_dirichlet) + ", royden " +
               fmt(dev_royden));
    }
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 3: 1-D p-Dirichlet linear interpolation -------------------
CriterionResult criterion_3(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 3;
    r.name = "1-D p-Dirichlet solves are linear interpolation (1e-6)";
    Check c;
    Group group(GroupSpec::parse("z^1"));
    auto ball = build_ball(group, 10);
    for (double p : {1.5, 3.0}) {
        SolverOptions sopts;
        sopts.grad_tol = 1e-11 * opts.solver_tol_factor;
        std::map<std::int32_t, double> bvals;
        for (std::int32_t v : ball->boundary)
            bvals[v] = group.z_coordinate(ball->vertices[v]) < 0 ? 0.0 : 1.0;
        const auto [h, rep] = solve_dirichlet(ball, bvals, p, sopts);
        double worst = 0.0;
        for (std::size_t v = 0; v < ball->size(); ++v) {
            const double n = static_cast<double>(group.z_coordinate(ball->vertices[v]));
            worst = std::max(worst, std::abs(h.values[v] - (n + 10.0) / 20.0));
        }
        c.require(worst <= 1e-6, "p=" + fmt(p) + " deviation " + fmt(worst));
        c.info("p=" + fmt(p) + ": max deviation " + fmt(worst));
    }
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 4: decomposition residual and uniqueness ------------------
CriterionResult criterion_4(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 4;
    r.name = "clamp decomposition: residual 1e-8, seed-independence 1e-6";
    Check c;
    Group group(GroupSpec::parse("z^1"));
    auto ball = build_ball(group, 20);
    GraphFunction f;
    f.ball = ball;
    f.values.resize(ball->size());
    for (std::size_t v = 0; v < ball->size(); ++v) {
        const double n = static_cast<double>(group.z_coordinate(ball->vertices[v]));
        f.values[v] = std::clamp(n, -10.0, 10.0);
    }
    for (double p : {1.5, 2.0, 3.0}) {
        SolverOptions sopts;
        sopts.grad_tol = 1e-10 * opts.solver_tol_factor;
        const Decomposition d = royden_decompose(f, p, sopts);
        c.require(d.report.max_interior_residual <= 1e-8,
                  "p=" + fmt(p) + " residual " + fmt(d.report.max_interior_residual));
        const UniquenessCheck u = decomposition_unique_up_to_constant(f, p, sopts, {1, 2}, 1e-6);
        c.require(u.unique_up_to_constant, "p=" + fmt(p) + " seed deviation " + fmt(u.max_deviation));
        c.info("p=" + fmt(p) + ": residual " + fmt(d.report.max_interior_residual) + ", seeds " +
               fmt(u.max_deviation));
    }
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 5: Folner profiles ----------------------------------------
CriterionResult criterion_5(const ReproOptions&) {
    CriterionResult r;
    r.index = 5;
    r.name = "Folner profiles and the f_k seminorm identity";
    Check c;
    for (double p : {1.5, 2.0, 3.0}) {
        const auto z2 = folner_profile(Group(GroupSpec::parse("z^2")), 50, p);
        c.require(z2.back().ratio < 0.06, "z^2 ratio(50) = " + fmt(z2.back().ratio));
        for (std::size_t i = 4; i + 1 < z2.size(); ++i)
            c.require(z2[i + 1].ratio < z2[i].ratio, "z^2 ratio not strictly decreasing at k=" +
                                                         std::to_string(z2[i].k));
        for (const auto& rec : z2)
            c.require(rec.edge_identity_ok, "z^2 k=" + std::to_string(rec.k) + " identity failed");

        const auto z1 = folner_profile(Group(GroupSpec::parse("z^1")), 50, p);
        for (const auto& rec : z1) {
            c.require(rec.edge_identity_ok, "z identity k=" + std::to_string(rec.k));
            // On Z each boundary vertex escapes through exactly one edge, so the
            // vertex form of the bound is an equality.
            c.require(rec.vertex_bound_ok, "z vertex bound k=" + std::to_string(rec.k));
        }

        const auto f2 = folner_profile(Group(GroupSpec::parse("free:2")), 10, p);
        const auto& last = f2.back();
        c.require(last.size == 118097 && last.boundary == 78732,
                  "free:2 counts |B_10| = " + std::to_string(last.size) + ", |dB_10| = " +
                      std::to_string(last.boundary));
        c.require(last.ratio >= 0.66 && last.ratio <= 0.67, "free:2 ratio(10) = " + fmt(last.ratio));
        for (const auto& rec : f2)
            c.require(rec.edge_identity_ok, "free:2 identity k=" + std::to_string(rec.k));
    }
    c.info("identity ||f_k||_D(p)^p = 2|edge dG_k|/|G_k| exact on z^1, z^2, free:2");
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 6: Markov contraction dichotomy ---------------------------
CriterionResult criterion_6(const ReproOptions&) {
    CriterionResult r;
    r.index = 6;
    r.name = "Markov norm estimates: free contraction vs Z";
    Check c;
    Group free2(GroupSpec::parse("free:2"));
    double prev = 0.0;
    double at10 = 0.0;
    for (int radius : {6, 8, 10}) {
        const NormEstimate est = operator_norm_estimate(free2, radius, 2.0, 1000);
        c.require(est.value >= prev - 1e-15, "free:2 estimate decreased at R=" + std::to_string(radius));
        prev = est.value;
        if (radius == 10) at10 = est.value;
    }
    c.require(at10 >= 0.85 && at10 <= 0.87, "free:2 estimate at R=10 is " + fmt(at10));

    Group z(GroupSpec::parse("z^1"));
    const NormEstimate zest = operator_norm_estimate(z, 200, 2.0, 1000);
    c.require(zest.value >= 0.99, "z estimate at R=200 is " + fmt(zest.value));
    c.info("free:2 -> " + fmt(at10) + ", z -> " + fmt(zest.value));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 7: the ends-based harmonic construction -------------------
CriterionResult criterion_7(const ReproOptions&) {
    CriterionResult r;
    r.index = 7;
    r.name = "harmonic construction on free:2 (R=45, r=0, K=40)";
    Check c;
    Group group(GroupSpec::parse("free:2"));
    const HarmonicConstruction hc = construct_harmonic(group, 2.0, 45, 0, 40);
    c.require(hc.report.residual_norm <= 1e-2, "residual " + fmt(hc.report.residual_norm));
    c.require(hc.report.h_sup - hc.report.h_inf >= 0.5,
              "sup-inf " + fmt(hc.report.h_sup - hc.report.h_inf));
    c.require(hc.report.step_support_ok, "support of h1*(P-I) is not shells {r, r+1}");

    const HarmonicConstruction hc45 = construct_harmonic(group, 2.0, 50, 0, 45);
    const double decay = hc45.report.residual_norm / hc.report.residual_norm;
    const double bound = std::pow(hc.report.rho, 5) * 1.5;
    c.require(decay <= bound, "5-step residual decay " + fmt(decay) + " > " + fmt(bound));
    c.info("residual " + fmt(hc.report.residual_norm) + ", sup-inf " +
           fmt(hc.report.h_sup - hc.report.h_inf) + ", decay " + fmt(decay) + " <= " + fmt(bound));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 8: the Gerl-constant dichotomy ----------------------------
CriterionResult criterion_8(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 8;
    r.name = "Gerl ratio: divergence on Z, stabilization on free:2";
    Check c;
    Group z(GroupSpec::parse("z^1"));
    auto zball = build_ball(z, 102);
    const InequalityReport zrep = gerl_max_ratio(zball, 2.0, 10, opts.seed);
    const double certificate = std::sqrt(201.0 / 4.0);
    c.require(zrep.empirical_constant >= certificate - 1e-9,
              "z constant " + fmt(zrep.empirical_constant) + " < " + fmt(certificate));

    Group free2(GroupSpec::parse("free:2"));
    const InequalityReport frep = gerl_ratio_search(free2, 8, 2.0, 1000, opts.seed);
    c.require(frep.pass, "free:2 stabilization ratio " + fmt(frep.stabilization_ratio));
    c.info("z -> " + fmt(zrep.empirical_constant) + " (>= " + fmt(certificate) + "), free:2 R8/R6 -> " +
           fmt(frep.stabilization_ratio));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 9: the mean-value estimate as a property suite ------------
CriterionResult criterion_9(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 9;
    r.name = "mean-value bound: 1000 random nonnegative samples";
    Check c;
    int violations = 0, runs = 0;
    for (const char* name : {"z^2", "free:2"}) {
        Group group(GroupSpec::parse(name));
        auto ball = build_ball(group, name[0] == 'z' ? 6 : 4);
        const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
        for (int tr = 0; tr < 500; ++tr) {
            Rng rng = Rng::for_trial(opts.seed, 900 + tr + (name[0] == 'z' ? 0 : 100'000));
            const GraphFunction f = random_connected_function(ball, rng, max_support, true);
            for (double t : {2.0, 2.5, 3.0}) {
                ++runs;
                if (!mean_value_bound_check(f, t).pass) ++violations;
            }
        }
    }
    c.require(violations == 0, std::to_string(violations) + " violations");
    c.info(std::to_string(runs) + " checks, 0 violations tolerated");
    r.pass = c.ok && violations == 0;
    r.detail = c.detail;
    return r;
}

// ---- criterion 10: Sobolev engine stabilization on Z^3 --------------------
CriterionResult criterion_10(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 10;
    r.name = "Sobolev (p=2, d=3) on z^3: stabilization and delta value";
    Check c;
    Group z3(GroupSpec::parse("z^3"));
    auto big = build_ball(z3, 8);
    auto small = build_ball(z3, 4);
    const InequalityReport rep_big = sobolev_pd_check(big, 2.0, 3.0, 1000, opts.seed);
    const InequalityReport rep_small = sobolev_pd_check(small, 2.0, 3.0, 1000, opts.seed);
    const double ratio = rep_big.empirical_constant / rep_small.empirical_constant;
    c.require(ratio <= 2.0 && ratio >= 0.5, "R=8 vs R=4 constants differ by factor " + fmt(ratio));

    // delta_e by hand: ||delta||_6 = 1 and ||delta||_{D(2)} = sqrt(2|S|) = 2 sqrt(3).
    GraphFunction delta = make_delta(big, 0);
    const double value = lp_norm(delta, 6.0) / dp_seminorm(delta, 2.0);
    const double expected = 1.0 / (2.0 * std::sqrt(3.0));
    c.require(std::abs(value - expected) <= 1e-12,
              "delta ratio " + fmt(value) + " vs " + fmt(expected));
    c.info("stabilization factor " + fmt(ratio) + ", delta ratio " + fmt(value));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 11: maximum principle across families ----------------------
CriterionResult criterion_11(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 11;
    r.name = "maximum principle: 50 random solves per family and p";
    Check c;
    struct Case {
        const char* group;
        int radius;
    } cases[] = {{"z^1", 8}, {"z^2", 5}, {"free:2", 3}, {"heisenberg", 3}};
    int failures = 0, runs = 0;
    for (const auto& cs : cases) {
        Group group(GroupSpec::parse(cs.group));
        auto ball = build_ball(group, cs.radius);
        for (double p : {1.5, 2.0, 3.0}) {
            for (int tr = 0; tr < 50; ++tr) {
                Rng rng = Rng::for_trial(opts.seed, 1100 + runs);
                std::map<std::int32_t, double> bvals;
                for (std::int32_t v : ball->boundary) bvals[v] = rng.uniform(-1.0, 1.0);
                SolverOptions sopts;
                sopts.grad_tol = 1e-11 * opts.solver_tol_factor;
                const auto [h, rep] = solve_dirichlet(ball, bvals, p, sopts);
                ++runs;
                if (!max_principle_scan(h, p, ball->interior, 1e-9)) ++failures;
            }
        }
    }
    c.require(failures == 0, std::to_string(failures) + " of " + std::to_string(runs) + " violated");
    c.info(std::to_string(runs) + " solves, extremes on the boundary at 1e-9");
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

// ---- criterion 12: kernel identities --------------------------------------
CriterionResult criterion_12(const ReproOptions& opts) {
    CriterionResult r;
    r.index = 12;
    r.name = "kernel identities on random instances";
    Check c;
    Group z2(GroupSpec::parse("z^2"));
    auto ball = build_ball(z2, 4);
    Group free2(GroupSpec::parse("free:2"));
    auto fball = build_ball(free2, 3);

    double worst_pairing = 0.0, worst_energy = 0.0, worst_const = 0.0, worst_grad = 0.0;
    int instance = 0;
    for (auto b : {ball, fball}) {
        for (double p : {1.5, 2.0, 3.0}) {
            for (int tr = 0; tr < 20; ++tr) {
                Rng rng = Rng::for_trial(opts.seed, 1200 + instance++);
                GraphFunction h = make_random(b, rng);

                // pairing(h, delta_g) = -2 Delta_p h(g)
                const std::int32_t g = b->interior[rng.below(b->interior.size())];
                const GraphFunction delta = make_delta(b, g);
                worst_pairing = std::max(
                    worst_pairing, std::abs(pairing(h, delta, p) + 2.0 * p_laplacian(h, p, g)));

                // <Delta_p h, h> = ||h||_{D(p)}^p on matching domains
                const double lhs = pairing(h, h, p);
                const double rhs = dp_seminorm_pow(h, p);
                worst_energy = std::max(worst_energy, std::abs(lhs - rhs) / std::max(1.0, rhs));

                // seminorm is constant-invariant
                GraphFunction shifted = h;
                const double shift = rng.uniform(-5.0, 5.0);
                for (auto& x : shifted.values) x += shift;
                worst_const = std::max(worst_const,
                                       std::abs(dp_seminorm(shifted, p) - dp_seminorm(h, p)) /
                                           std::max(1.0, dp_seminorm(h, p)));

                // analytic gradient of the in-ball energy vs central differences
                const std::int32_t x = b->interior[rng.below(b->interior.size())];
                const double analytic = -2.0 * p * p_laplacian(h, p, x);
                const double step = 1e-6;
                GraphFunction hp = h, hm = h;
                hp.values[x] += step;
                hm.values[x] -= step;
                const double fd = (dirichlet_energy(hp, p) - dirichlet_energy(hm, p)) / (2.0 * step);
                worst_grad = std::max(worst_grad,
                                      std::abs(fd - analytic) / std::max(1e-12, std::abs(analytic)));
            }
        }
    }
    c.require(worst_pairing <= 1e-12, "pairing identity deviation " + fmt(worst_pairing));
    c.require(worst_energy <= 1e-12, "energy identity deviation " + fmt(worst_energy));
    c.require(worst_const <= 1e-10, "constant invariance deviation " + fmt(worst_const));
    c.require(worst_grad <= 1e-4, "gradient vs finite differences " + fmt(worst_grad));
    c.info("pairing " + fmt(worst_pairing) + ", energy " + fmt(worst_energy) + ", shift " +
           fmt(worst_const) + ", grad " + fmt(worst_grad));
    r.pass = c.ok;
    r.detail = c.detail;
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const ReproOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    using Fn = CriterionResult (*)(const ReproOptions&);
    const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                           criterion_5, criterion_6, criterion_7, criterion_8,
                           criterion_9, criterion_10, criterion_11, criterion_12};
    std::vector<CriterionResult> results;
    for (Fn fn : criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(opts);
        } catch (const std::exception& e) {
            r.index = static_cast<int>(results.size()) + 1;
            r.name = "criterion " + std::to_string(r.index);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string format_result_line(const CriterionResult& r) {
    std::ostringstream out;
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << ": " << r.name;
    if (!r.detail.empty()) out << " -- " << r.detail;
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
    out << buf;
    return out.str();
}

} // namespace pharmonic
