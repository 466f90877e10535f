#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pharmonic/function.hpp"
#include "pharmonic/group.hpp"
#include "pharmonic/io.hpp"

using namespace pharmonic;

namespace {

std::shared_ptr<const CayleyBall> z_ball(int radius) {
    return build_ball(Group(GroupSpec::parse("z^1")), radius);
}

// f(n) = n on a Z ball.
GraphFunction linear_on_z(std::shared_ptr<const CayleyBall> ball) {
    Group g(GroupSpec::parse("z^1"));
    GraphFunction f;
    f.values.resize(ball->size());
    for (std::size_t v = 0; v < ball->size(); ++v)
        f.values[v] = static_cast<double>(g.z_coordinate(ball->vertices[v]));
    f.ball = std::move(ball);
    return f;
}

std::int32_t z_index(const CayleyBall& ball, std::int64_t n) {
    Group g(GroupSpec::parse("z^1"));
    Element e = g.identity();
    const int s = n >= 0 ? 0 : 1;
    for (std::int64_t i = 0; i < std::llabs(n); ++i) e = g.multiply(e, g.generator(s));
    return ball.find(e);
}

// Plain-loop reimplementation of the pairing double sum, kept deliberately
// separate from the library path.
double pairing_oracle(const GraphFunction& h, const GraphFunction& f, double p) {
    double acc = 0.0;
    for (std::size_t v = 0; v < h.ball->size(); ++v) {
        for (int s = 0; s < h.ball->degree; ++s) {
            auto hn = neighbor_value(h, static_cast<std::int32_t>(v), s);
            auto fn = neighbor_value(f, static_cast<std::int32_t>(v), s);
            if (!hn || !fn) continue;
            const double hd = *hn - h.values[v];
            const double fd = *fn - f.values[v];
            if (hd != 0.0) acc += std::copysign(std::pow(std::abs(hd), p - 1.0), hd) * fd;
        }
    }
    return acc;
}

} // namespace

TEST_CASE("exponents are conjugate") {
    const Exponents e = Exponents::from_p(1.5);
    CHECK(1.0 / e.p + 1.0 / e.q == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(Exponents::from_p(1.0), std::invalid_argument);
}

TEST_CASE("translate_diff basics on Z") {
    auto ball = z_ball(3);
    SUBCASE("constant maps to zero") {
        GraphFunction c = make_constant(ball, 3.5);
        const PartialFunction d = translate_diff(c, 0);
        for (std::size_t v = 0; v < d.values.size(); ++v)
            if (d.defined[v]) CHECK(d.values[v] == 0.0);
    }
    SUBCASE("delta_0 against s = +1 is delta_1 - delta_0") {
        GraphFunction delta = make_delta(ball, 0);
        const PartialFunction d = translate_diff(delta, 0); // (f*(s-1))(g) = f(g-1) - f(g)
        CHECK(d.num_defined == ball->size());               // zero tail resolves everything
        CHECK(d.values[z_index(*ball, 1)] == 1.0);
        CHECK(d.values[z_index(*ball, 0)] == -1.0);
        CHECK(d.values[z_index(*ball, 2)] == 0.0);
    }
    SUBCASE("f(n) = n against s = +1 is constant -1 where resolvable") {
        const GraphFunction f = linear_on_z(ball);
        const PartialFunction d = translate_diff(f, 0);
        CHECK(d.num_defined == ball->size() - 1); // n = -3 needs f(-4)
        for (std::int64_t n = -2; n <= 3; ++n) {
            const std::int32_t v = z_index(*ball, n);
            CHECK(d.defined[v]);
            CHECK(d.values[v] == -1.0);
        }
        CHECK_FALSE(d.defined[z_index(*ball, -3)]);
    }
}

TEST_CASE("formula tail resolves out-of-ball neighbors on z^1") {
    auto ball = z_ball(3);
    GraphFunction f = linear_on_z(ball);
    f.tail = Tail::Formula;
    f.formula = [](std::int64_t n) { return static_cast<double>(n); };
    const PartialFunction d = translate_diff(f, 0);
    CHECK(d.num_defined == ball->size());
    CHECK(d.values[z_index(*ball, -3)] == -1.0);
}

TEST_CASE("lp norms") {
    auto ball = z_ball(4);
    SUBCASE("delta has unit norm for every p") {
        GraphFunction delta = make_delta(ball, 0);
        for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(lp_norm(delta, p) == doctest::Approx(1.0));
    }
    SUBCASE("indicator of 16 vertices at p = 2") {
        Group g(GroupSpec::parse("z^1"));
        auto big = build_ball(g, 20);
        GraphFunction chi = make_constant(big, 0.0, Tail::Zero);
        for (int v = 0; v < 16; ++v) chi.values[v] = 1.0;
        CHECK(lp_norm(chi, 2.0) == doctest::Approx(4.0));
    }
    SUBCASE("harmonic partial sum against direct summation") {
        // f(n) = n^{-1/2} on 1..1e4; ||f||_2^2 is the harmonic partial sum.
        Group g(GroupSpec::parse("z^1"));
        auto big = build_ball(g, 10'000, 50'000);
        GraphFunction f = make_constant(big, 0.0, Tail::Zero);
        for (std::size_t v = 0; v < big->size(); ++v) {
            const std::int64_t n = g.z_coordinate(big->vertices[v]);
            if (n >= 1) f.values[v] = std::pow(static_cast<double>(n), -0.5);
        }
        KahanSum direct;
        for (int n = 1; n <= 10'000; ++n) direct.add(1.0 / n);
        CHECK(std::abs(lp_norm_pow(f, 2.0) - direct.value()) <= 1e-9);
        // Euler-Maclaurin cross-check of the oracle itself
        const double gamma = 0.5772156649015329;
        CHECK(std::abs(direct.value() - (std::log(1e4) + gamma + 0.5e-4)) <= 1e-6);
    }
}

TEST_CASE("dp seminorm and norm on Z") {
    auto ball = z_ball(5);
    SUBCASE("kernel of the quotient norm: constants") {
        GraphFunction c = make_constant(ball, 7.0);
        CHECK(dp_seminorm(c, 2.0) == 0.0);
        CHECK(dp_norm(c, 2.0) == doctest::Approx(7.0));
    }
    SUBCASE("delta_0: four ordered differences of modulus 1") {
        GraphFunction delta = make_delta(ball, 0);
        CHECK(dp_seminorm(delta, 2.0) == doctest::Approx(2.0));
        CHECK(dp_norm(delta, 2.0) == doctest::Approx(std::sqrt(5.0)));
        for (double p : {1.5, 2.0, 3.0}) CHECK(dp_norm(delta, p) >= dp_seminorm(delta, p));
    }
    SUBCASE("f_k bound: ||f_k||_{D(p)}^p = 4/(2k+1) on Z") {
        const int k = 2;
        GraphFunction fk = make_ball_indicator(ball, k);
        for (double p : {1.5, 2.0, 3.0}) {
            const double scale = std::pow(2.0 * k + 1.0, -1.0 / p);
            GraphFunction scaled = fk;
            for (auto& v : scaled.values) v *= scale;
            CHECK(dp_seminorm_pow(scaled, p) == doctest::Approx(4.0 / (2 * k + 1)).epsilon(1e-14));
            CHECK(lp_norm(scaled, p) == doctest::Approx(1.0));
        }
    }
    SUBCASE("strict coverage demands a tail rule") {
        const GraphFunction f = linear_on_z(ball);
        CHECK_THROWS_AS(dp_seminorm(f, 2.0, true), std::invalid_argument);
    }
}

TEST_CASE("p-laplacian values and conventions") {
    auto ball = z_ball(4);
    SUBCASE("constants are p-harmonic") {
        GraphFunction c = make_constant(ball, 2.0);
        for (std::int32_t v : ball->interior) CHECK(p_laplacian(c, 1.5, v) == 0.0);
    }
    SUBCASE("linear functions are p-harmonic on Z") {
        const GraphFunction f = linear_on_z(ball);
        for (double p : {1.5, 2.0, 3.0})
            for (std::int32_t v : ball->interior) CHECK(p_laplacian(f, p, v) == doctest::Approx(0.0));
    }
    SUBCASE("delta_0 at the origin, p = 1.5: both terms are -1") {
        GraphFunction delta = make_delta(ball, 0);
        CHECK(p_laplacian(delta, 1.5, 0) == doctest::Approx(-2.0));
        CHECK(p_laplacian(delta, 2.0, 0) == doctest::Approx(-2.0));
    }
    SUBCASE("boundary vertices without a tail rule are rejected") {
        const GraphFunction f = linear_on_z(ball);
        CHECK_THROWS_AS(p_laplacian(f, 2.0, z_index(*ball, 4)), std::invalid_argument);
    }
    SUBCASE("p = 2 agrees with the combinatorial laplacian") {
        Rng rng(11);
        GraphFunction f = make_random(ball, rng);
        for (std::int32_t v : ball->interior) {
            double comb = 0.0;
            for (int s = 0; s < ball->degree; ++s) comb += *neighbor_value(f, v, s) - f.values[v];
            CHECK(p_laplacian(f, 2.0, v) == doctest::Approx(comb).epsilon(1e-12));
        }
    }
}

TEST_CASE("pairing identities") {
    for (const char* name : {"z^1", "z^2", "free:2", "heisenberg"}) {
        Group g(GroupSpec::parse(name));
        auto ball = build_ball(g, 3);
        for (double p : {1.5, 2.0, 3.0}) {
            for (std::uint64_t seed : {1u, 2u, 3u}) {
                Rng rng(seed);
                GraphFunction h = make_random(ball, rng);
                GraphFunction f = make_random(ball, rng);

                // <Delta_p h, h> = ||h||_{D(p)}^p termwise
                CHECK(pairing(h, h, p) ==
                      doctest::Approx(dp_seminorm_pow(h, p)).epsilon(1e-13));

                // constants annihilate the pairing
                GraphFunction c = make_constant(ball, 4.2);
                CHECK(pairing(c, f, p) == 0.0);

                // delta pairing identity: pairing(h, delta_g) = -2 Delta_p h(g)
                for (std::int32_t v : ball->interior) {
                    const GraphFunction delta = make_delta(ball, v);
                    CHECK(std::abs(pairing(h, delta, p) + 2.0 * p_laplacian(h, p, v)) <= 1e-12);
                }

                // independent double-sum oracle; p = 2 adds symmetry
                CHECK(pairing(h, f, p) == doctest::Approx(pairing_oracle(h, f, p)).epsilon(1e-12));
                if (p == 2.0)
                    CHECK(pairing(h, f, 2.0) == doctest::Approx(pairing(f, h, 2.0)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("monotonicity of the pairing difference (uniqueness mechanism)") {
    Group g(GroupSpec::parse("z^2"));
    auto ball = build_ball(g, 3);
    for (double p : {1.5, 2.0, 3.0}) {
        Rng rng(5);
        GraphFunction f1 = make_random(ball, rng);
        GraphFunction f2 = make_random(ball, rng);
        GraphFunction diff = f1;
        for (std::size_t v = 0; v < diff.values.size(); ++v) diff.values[v] -= f2.values[v];
        // <Delta_p f1 - Delta_p f2, f1 - f2> > 0 when the difference fields differ
        const double lhs = pairing(f1, diff, p) - pairing(f2, diff, p);
        CHECK(lhs > 0.0);
        // and == 0 when f2 = f1 + constant
        GraphFunction shifted = f1;
        for (auto& v : shifted.values) v += 3.25;
        const double zero = pairing(f1, diff, p) - pairing(shifted, diff, p);
        CHECK(std::abs(zero) <= 1e-11);
    }
}

TEST_CASE("pairing requires a shared ball") {
    Group g(GroupSpec::parse("z^1"));
    auto a = build_ball(g, 3), b = build_ball(g, 3);
    CHECK_THROWS_AS(pairing(make_delta(a, 0), make_delta(b, 0), 2.0), std::invalid_argument);
    CHECK_THROWS_AS(build_ball(g, -1), std::invalid_argument);
}

TEST_CASE("dp seminorm is constant-invariant") {
    Group g(GroupSpec::parse("heisenberg"));
    auto ball = build_ball(g, 3);
    Rng rng(9);
    GraphFunction f = make_random(ball, rng);
    for (double p : {1.5, 2.0, 3.0}) {
        GraphFunction shifted = f;
        for (auto& v : shifted.values) v += 17.5;
        CHECK(dp_seminorm(shifted, p) == doctest::Approx(dp_seminorm(f, p)).epsilon(1e-12));
    }
}

TEST_CASE("function serialization") {
    Group g(GroupSpec::parse("z^1"));
    auto ball = build_ball(g, 2);
    GraphFunction f = make_delta(ball, 0);
    const std::string doc = function_to_json(f, "z^1:2");
    CHECK(doc.find("\"ball_ref\":\"z^1:2\"") != std::string::npos);
    CHECK(doc.find("\"values\":[1.0,") != std::string::npos);
    const std::string csv = function_to_csv(g, f);
    CHECK(csv.rfind("vertex,value\n", 0) == 0);
    CHECK(csv.find("\"(0)\",1\n") != std::string::npos);
    CHECK(csv.find("\"(-2)\",0\n") != std::string::npos);
}

TEST_CASE("is_p_harmonic") {
    auto ball = z_ball(4);
    const GraphFunction f = linear_on_z(ball);
    const auto ok = is_p_harmonic(f, 3.0, ball->interior, 1e-12);
    CHECK(ok.harmonic);
    GraphFunction delta = make_delta(ball, 0);
    const auto bad = is_p_harmonic(delta, 2.0, {0}, 1e-9);
    CHECK_FALSE(bad.harmonic);
    CHECK(bad.max_residual == doctest::Approx(2.0));
}
