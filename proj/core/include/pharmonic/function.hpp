#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "pharmonic/cayley_ball.hpp"
#include "pharmonic/rng.hpp"

namespace pharmonic {

/// Conjugate exponent pair, 1/p + 1/q = 1.
struct Exponents {
    double p;
    double q;
    static Exponents from_p(double p);
};

/// How a ball-supported function extends beyond its ball.
enum class Tail {
    None,    // undefined outside; boundary-crossing pairs are unresolvable
    Zero,    // finitely supported element of F(G)
    Formula, // closed-form value from the integer coordinate; z^1 only
};

/// Real-valued function on the vertices of a CayleyBall. Values are immutable
/// by convention once handed to an operation; all kernels are pure.
struct GraphFunction {
    std::shared_ptr<const CayleyBall> ball;
    std::vector<double> values;
    Tail tail = Tail::None;
    std::function<double(std::int64_t)> formula; // used when tail == Formula

    double operator[](std::int32_t v) const { return values[v]; }
};

GraphFunction make_constant(std::shared_ptr<const CayleyBall> ball, double c, Tail tail = Tail::None);
GraphFunction make_delta(std::shared_ptr<const CayleyBall> ball, std::int32_t vertex);
/// Indicator of the sub-ball of the given radius, zero outside.
GraphFunction make_ball_indicator(std::shared_ptr<const CayleyBall> ball, int sub_radius);
/// i.i.d. uniform [-1,1] values on every vertex (Tail::None).
GraphFunction make_random(std::shared_ptr<const CayleyBall> ball, Rng& rng);

/// Partial result of an operation that may be unresolvable on part of the ball.
struct PartialFunction {
    std::shared_ptr<const CayleyBall> ball;
    std::vector<double> values;          // meaningful where defined[v] != 0
    std::vector<std::uint8_t> defined;
    std::size_t num_defined = 0;
};

/// Value of f at the s-neighbor g*s^{-1} of vertex v, resolved through the
/// ball adjacency or the tail rule. Empty when unresolvable.
std::optional<double> neighbor_value(const GraphFunction& f, std::int32_t v, int s);

/// sign(x)*|x|^e with the exact-zero convention signed_power(0, e) = 0.
inline double signed_power(double x, double e) {
    if (x == 0.0) return 0.0;
    return x > 0 ? std::pow(x, e) : -std::pow(-x, e);
}

/// Compensated (Kahan) accumulator; norms over long domains stay accurate.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

/// f*(s-1) : g -> f(g s^{-1}) - f(g). Unresolvable vertices are flagged.
PartialFunction translate_diff(const GraphFunction& f, int s);

/// ( sum_g |f(g)|^p )^{1/p} over the ball domain, p >= 1.
double lp_norm(const GraphFunction& f, double p);
/// sum_g |f(g)|^p (the p-th power, exposed separately because several bound
/// computations work with the un-rooted sums).
double lp_norm_pow(const GraphFunction& f, double p);

/// Quotient norm ||f||_{D(p)} = ( sum_{s in S} ||f*(s-1)||_p^p )^{1/p}.
/// Sums run over ordered (g, s) pairs, so each undirected edge is counted
/// twice. Pairs whose neighbor is unresolvable are skipped when the function
/// has no tail rule (the ball is its declared domain); with `strict` they
/// raise std::invalid_argument instead.
double dp_seminorm(const GraphFunction& f, double p, bool strict = false);
double dp_seminorm_pow(const GraphFunction& f, double p, bool strict = false);

/// Banach norm on D^p(G): ( ||f||_{D(p)}^p + |f(e)|^p )^{1/p}.
double dp_norm(const GraphFunction& f, double p, bool strict = false);

/// Delta_p f(g) = sum_s |f(gs^{-1})-f(g)|^{p-2} (f(gs^{-1})-f(g)), p > 1,
/// with the 1<p<2 convention that vanishing differences contribute zero.
/// Throws if some neighbor of g is unresolvable.
double p_laplacian(const GraphFunction& f, double p, std::int32_t g);

/// <Delta_p h, f> as the double sum over ordered (g, s) pairs resolvable for
/// both functions. The functions must share a ball.
double pairing(const GraphFunction& h, const GraphFunction& f, double p);

struct HarmonicityCheck {
    bool harmonic;
    double max_residual;
};

/// True iff max_{g in region} |Delta_p f(g)| <= tol. Region must consist of
/// vertices whose neighbors are resolvable.
HarmonicityCheck is_p_harmonic(const GraphFunction& f, double p,
                               const std::vector<std::int32_t>& region, double tol);

} // namespace pharmonic
