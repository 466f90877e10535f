#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "pharmonic/inequalities.hpp"
#include "pharmonic/solver.hpp"

using namespace pharmonic;

TEST_CASE("folner profiles") {
    SUBCASE("z^1: exact path-graph records") {
        const auto recs = folner_profile(Group(GroupSpec::parse("z^1")), 20, 2.0);
        CHECK(recs.back().ratio < 0.1); // amenable side of the dichotomy by k = 20d
        for (const auto& r : recs) {
            CHECK(r.size == 2 * r.k + 1);
            CHECK(r.boundary == 2);
            CHECK(r.boundary_edges == 2);
            CHECK(r.ratio == doctest::Approx(2.0 / (2 * r.k + 1)));
            CHECK(r.edge_identity_ok);
            CHECK(r.vertex_bound_ok); // equality on Z
            CHECK(r.folner_norm == doctest::Approx(std::pow(4.0 / (2 * r.k + 1), 0.5)));
        }
    }
    SUBCASE("free:2: ratio pinned by the sphere count") {
        const auto recs = folner_profile(Group(GroupSpec::parse("free:2")), 10, 2.0);
        const auto& last = recs.back();
        CHECK(last.size == 118097);
        CHECK(last.boundary == 78732);
        CHECK(last.ratio == doctest::Approx(78732.0 / 118097.0).epsilon(1e-15));
        for (const auto& r : recs) CHECK(r.ratio >= 0.6); // bounded away from amenability
        // each sphere vertex escapes through 3 of its 4 edges: the vertex form
        // of the f_k bound fails, while the edge identity is exact
        CHECK(last.boundary_edges == 3 * last.boundary);
        CHECK(last.edge_identity_ok);
        CHECK_FALSE(last.vertex_bound_ok);
    }
    SUBCASE("z^2: ratio decays to zero") {
        const auto recs = folner_profile(Group(GroupSpec::parse("z^2")), 50, 1.5);
        CHECK(recs.back().ratio < 0.06);
        for (std::size_t i = 4; i + 1 < recs.size(); ++i) CHECK(recs[i + 1].ratio < recs[i].ratio);
        for (const auto& r : recs) {
            CHECK(r.size == 2 * r.k * r.k + 2 * r.k + 1);
            CHECK(r.boundary == 4 * r.k);
            CHECK(r.edge_identity_ok);
        }
        // the vertex form fails on Z^2 (axis vertices escape through 3 edges)
        CHECK_FALSE(recs[0].vertex_bound_ok);
    }
    SUBCASE("||f_k||_p = 1 by construction") {
        Group g(GroupSpec::parse("z^2"));
        auto ball = build_ball(g, 6);
        for (int k : {1, 3, 5}) {
            GraphFunction fk = make_ball_indicator(ball, k);
            double count = 0;
            for (double v : fk.values) count += v;
            for (auto& v : fk.values) v *= std::pow(count, -1.0 / 2.0);
            CHECK(lp_norm(fk, 2.0) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("gerl ratios") {
    SUBCASE("delta on Z: ratio one half") {
        Group z(GroupSpec::parse("z^1"));
        auto ball = build_ball(z, 6);
        GraphFunction delta = make_delta(ball, 0);
        CHECK(lp_norm(delta, 2.0) / dp_seminorm(delta, 2.0) == doctest::Approx(0.5));
    }
    SUBCASE("amenable divergence certificate at k = 100") {
        Group z(GroupSpec::parse("z^1"));
        const InequalityReport rep = gerl_ratio_search(z, 102, 2.0, 10, 7);
        CHECK(rep.pass);
        CHECK(rep.empirical_constant >= std::sqrt(201.0 / 4.0) - 1e-9);
    }
    SUBCASE("nonamenable stabilization across radii") {
        Group f2(GroupSpec::parse("free:2"));
        const InequalityReport rep = gerl_ratio_search(f2, 7, 2.0, 200, 7);
        CHECK(rep.pass);
        CHECK(rep.stabilization_ratio <= 1.2);
    }
    SUBCASE("witness reproduces its ratio") {
        Group f2(GroupSpec::parse("free:2"));
        auto ball = build_ball(f2, 5);
        const InequalityReport rep = gerl_max_ratio(ball, 2.0, 50, 3);
        GraphFunction w = make_constant(ball, 0.0, Tail::Zero);
        for (std::size_t i = 0; i < rep.witness.idx.size(); ++i)
            w.values[rep.witness.idx[i]] = rep.witness.val[i];
        const double again = lp_norm(w, 2.0) / dp_seminorm(w, 2.0);
        CHECK(again == doctest::Approx(rep.empirical_constant).epsilon(1e-10));
    }
}

TEST_CASE("sobolev condition S_d") {
    SUBCASE("delta value 1/(2|S|)") {
        for (const char* name : {"z^1", "z^2", "free:2"}) {
            Group g(GroupSpec::parse(name));
            auto ball = build_ball(g, 4);
            GraphFunction delta = make_delta(ball, 0);
            const double ratio = lp_norm(delta, 2.0) / dp_seminorm_pow(delta, 1.0);
            CHECK(ratio == doctest::Approx(1.0 / (2.0 * ball->degree)));
        }
    }
    SUBCASE("z^1 at d = 2: indicators push the constant up like sqrt(k)/4") {
        Group z(GroupSpec::parse("z^1"));
        for (int radius : {9, 16, 25}) {
            auto ball = build_ball(z, radius);
            const InequalityReport rep = sobolev_sd_check(ball, 2.0, 20, 5);
            const int k = radius - 1;
            CHECK(rep.empirical_constant >= std::sqrt(2.0 * k + 1.0) / 4.0 - 1e-12);
        }
    }
    SUBCASE("z^2 at d = 2: stable across radii") {
        Group g(GroupSpec::parse("z^2"));
        auto small = build_ball(g, 10);
        auto big = build_ball(g, 20);
        const double c1 = sobolev_sd_check(small, 2.0, 150, 5).empirical_constant;
        const double c2 = sobolev_sd_check(big, 2.0, 150, 5).empirical_constant;
        CHECK(c2 / c1 <= 1.25);
        CHECK(c1 / c2 <= 1.25);
    }
    SUBCASE("witness re-evaluates to its recorded ratio") {
        Group g(GroupSpec::parse("z^2"));
        auto ball = build_ball(g, 8);
        const InequalityReport rep = sobolev_sd_check(ball, 2.0, 100, 11);
        GraphFunction w = make_constant(ball, 0.0, Tail::Zero);
        for (std::size_t i = 0; i < rep.witness.idx.size(); ++i)
            w.values[rep.witness.idx[i]] = rep.witness.val[i];
        const double again = lp_norm(w, 2.0) / dp_seminorm_pow(w, 1.0);
        CHECK(again == doctest::Approx(rep.empirical_constant).epsilon(1e-10));
    }
}

TEST_CASE("isoperimetric condition (IS)_d") {
    SUBCASE("singleton ratio is one") {
        Group g(GroupSpec::parse("z^2"));
        IsoperimetricOptions opts;
        opts.max_ball_k = 0; // only the singleton ball B_0 = {e}
        opts.max_box_n = 0;
        opts.random_sets = 0;
        const InequalityReport rep = isoperimetric_check(g, 2.0, opts);
        CHECK(rep.empirical_constant == doctest::Approx(1.0));
    }
    SUBCASE("z^2 boxes approach 1/16") {
        Group g(GroupSpec::parse("z^2"));
        IsoperimetricOptions opts;
        opts.max_ball_k = 4;
        opts.max_box_n = 14;
        opts.random_sets = 50;
        const InequalityReport rep = isoperimetric_check(g, 2.0, opts);
        // n x n box: n^2 / (4n-4)^2, increasing toward 1/16
        const double n = 14, box_best = n * n / std::pow(4 * n - 4, 2.0);
        CHECK(rep.empirical_constant >= box_best - 1e-12);
        CHECK(rep.empirical_constant <= 1.0);
    }
    SUBCASE("free:2 ball ratios collapse for large d") {
        Group g(GroupSpec::parse("free:2"));
        IsoperimetricOptions opts;
        opts.max_ball_k = 6;
        opts.random_sets = 0;
        const InequalityReport rep = isoperimetric_check(g, 6.0, opts);
        // exponential boundary dominance: balls give tiny |A|^{d-1}/|dA|^d
        CHECK(rep.empirical_constant <= 1.0); // singleton dominates
    }
}

TEST_CASE("mean value bound") {
    Group g(GroupSpec::parse("z^1"));
    auto ball = build_ball(g, 6);
    SUBCASE("delta at t = 2: lhs 4, rhs 8") {
        GraphFunction delta = make_delta(ball, 0);
        const MeanValueCheck check = mean_value_bound_check(delta, 2.0);
        CHECK(check.lhs == doctest::Approx(4.0));
        CHECK(check.rhs == doctest::Approx(8.0));
        CHECK(check.pass);
    }
    SUBCASE("zero function: both sides vanish") {
        GraphFunction zero = make_constant(ball, 0.0, Tail::Zero);
        const MeanValueCheck check = mean_value_bound_check(zero, 3.0);
        CHECK(check.lhs == 0.0);
        CHECK(check.rhs == 0.0);
        CHECK(check.pass);
    }
    SUBCASE("negative values are rejected") {
        GraphFunction f = make_delta(ball, 0);
        f.values[0] = -1.0;
        CHECK_THROWS_AS(mean_value_bound_check(f, 2.0), std::invalid_argument);
    }
    SUBCASE("random nonnegative samples never violate the bound") {
        Group g2(GroupSpec::parse("z^2"));
        auto ball2 = build_ball(g2, 5);
        for (int tr = 0; tr < 200; ++tr) {
            Rng rng = Rng::for_trial(99, static_cast<std::uint64_t>(tr));
            const GraphFunction f =
                random_connected_function(ball2, rng, ball2->interior.size() / 2, true);
            for (double t : {2.0, 2.5, 3.0}) CHECK(mean_value_bound_check(f, t).pass);
        }
    }
}

TEST_CASE("sobolev p-d engine") {
    SUBCASE("delta on z^3 at p=2, d=3") {
        Group g(GroupSpec::parse("z^3"));
        auto ball = build_ball(g, 4);
        GraphFunction delta = make_delta(ball, 0);
        // ||delta||_6 = 1, ||delta||_{D(2)} = sqrt(2 |S|) = sqrt(12)
        CHECK(lp_norm(delta, 6.0) == doctest::Approx(1.0));
        CHECK(dp_seminorm(delta, 2.0) == doctest::Approx(2.0 * std::sqrt(3.0)));
        const double ratio = lp_norm(delta, 6.0) / dp_seminorm(delta, 2.0);
        CHECK(std::abs(ratio - 1.0 / (2.0 * std::sqrt(3.0))) <= 1e-12);
    }
    SUBCASE("d <= p rejected") {
        Group g(GroupSpec::parse("z^1"));
        auto ball = build_ball(g, 4);
        CHECK_THROWS_AS(sobolev_pd_check(ball, 2.0, 1.0, 5, 1), std::invalid_argument);
    }
    SUBCASE("p > 2 runs but carries the hypothesis note") {
        Group g(GroupSpec::parse("z^3"));
        auto ball = build_ball(g, 3);
        const InequalityReport rep = sobolev_pd_check(ball, 2.5, 3.0, 10, 1);
        CHECK(rep.note.find("beyond the stated hypothesis") != std::string::npos);
    }
}

TEST_CASE("z example") {
    SUBCASE("difference-sum bound chain at p = 2") {
        const ZExampleReport rep = z_example(2.0, 3.0, 100'000);
        CHECK(rep.diff_sum <= 1.0 + std::pow(std::numbers::pi, 2) / 6.0);
        // frozen direct-summation value
        CHECK(rep.diff_sum == doctest::Approx(1.1163742).epsilon(1e-6));
        CHECK(rep.in_dp);
        CHECK(rep.lp_diverging); // gap -> ln 2
        CHECK(rep.divergence_gap == doctest::Approx(std::log(2.0)).epsilon(1e-4));
        CHECK(rep.lpp_cauchy);
    }
    SUBCASE("monotone in N and always below the bound") {
        double prev = 0.0;
        for (std::int64_t n : {100, 1000, 10'000}) {
            const ZExampleReport rep = z_example(2.0, 3.0, n);
            CHECK(rep.diff_sum >= prev);
            CHECK(rep.diff_sum <= rep.diff_bound);
            prev = rep.diff_sum;
        }
    }
    SUBCASE("tail ratio at N = 1000, p' = 3 is just above one percent") {
        const ZExampleReport rep = z_example(2.0, 3.0, 1000);
        CHECK(rep.lpp_tail_ratio == doctest::Approx(0.0103).epsilon(0.02));
        CHECK(rep.lpp_cauchy); // with the default 2% threshold
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(z_example(1.0, 3.0, 100), std::invalid_argument);
        CHECK_THROWS_AS(z_example(2.0, 2.0, 100), std::invalid_argument);
        CHECK_THROWS_AS(z_example(2.0, 3.0, 5), std::invalid_argument);
    }
}

TEST_CASE("max principle scan") {
    Group g(GroupSpec::parse("z^1"));
    auto ball = build_ball(g, 8);
    SUBCASE("linear function: extremes at the endpoints") {
        GraphFunction f;
        f.ball = ball;
        f.values.resize(ball->size());
        for (std::size_t v = 0; v < ball->size(); ++v)
            f.values[v] = static_cast<double>(g.z_coordinate(ball->vertices[v]));
        CHECK(max_principle_scan(f, 2.0, ball->interior, 1e-12));
    }
    SUBCASE("an interior bump violates it") {
        GraphFunction f = make_delta(ball, 0);
        CHECK_FALSE(max_principle_scan(f, 2.0, ball->interior, 1e-12));
    }
    SUBCASE("constants pass") {
        CHECK(max_principle_scan(make_constant(ball, 3.0), 2.0, ball->interior, 0.0));
    }
}

TEST_CASE("random dirichlet solves obey the maximum principle across families") {
    for (const char* name : {"z^2", "free:2", "heisenberg"}) {
        Group g(GroupSpec::parse(name));
        auto ball = build_ball(g, 3);
        for (double p : {1.5, 2.0, 3.0}) {
            for (int tr = 0; tr < 10; ++tr) {
                Rng rng = Rng::for_trial(1234, static_cast<std::uint64_t>(tr));
                std::map<std::int32_t, double> bvals;
                for (std::int32_t v : ball->boundary) bvals[v] = rng.uniform(-1.0, 1.0);
                const auto [h, report] = solve_dirichlet(ball, bvals, p);
                CHECK(max_principle_scan(h, p, ball->interior, 1e-9));
            }
        }
    }
}
