#include "pharmonic/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace pharmonic {

GraphFunction MarkovOperator::apply(const GraphFunction& f) const {
    if (f.ball != ball_) throw std::invalid_argument("MarkovOperator: function lives on another ball");
    GraphFunction out;
    out.ball = ball_;
    // A zero tail is preserved by averaging only in the sense that the output
    // of a finitely supported input is again finitely supported; a formula
    // tail is not P-invariant in general, so the output is ball-only.
    out.tail = (f.tail == Tail::Zero) ? Tail::Zero : Tail::None;
    out.values.resize(ball_->size());
    const double inv = 1.0 / ball_->degree;
    for (std::size_t v = 0; v < ball_->size(); ++v) {
        double acc = 0.0;
        for (int s = 0; s < ball_->degree; ++s) {
            auto nb = neighbor_value(f, static_cast<std::int32_t>(v), s);
            if (!nb)
                throw std::invalid_argument("MarkovOperator::apply: unresolvable neighbor at vertex " +
                                            std::to_string(v));
            acc += *nb;
        }
        out.values[v] = acc * inv;
    }
    return out;
}

PartialFunction MarkovOperator::apply_partial(const GraphFunction& f) const {
    if (f.ball != ball_) throw std::invalid_argument("MarkovOperator: function lives on another ball");
    PartialFunction out;
    out.ball = ball_;
    out.values.assign(ball_->size(), 0.0);
    out.defined.assign(ball_->size(), 0);
    const double inv = 1.0 / ball_->degree;
    for (std::size_t v = 0; v < ball_->size(); ++v) {
        double acc = 0.0;
        bool ok = true;
        for (int s = 0; s < ball_->degree && ok; ++s) {
            auto nb = neighbor_value(f, static_cast<std::int32_t>(v), s);
            if (!nb)
                ok = false;
            else
                acc += *nb;
        }
        if (ok) {
            out.values[v] = acc * inv;
            out.defined[v] = 1;
            ++out.num_defined;
        }
    }
    return out;
}

namespace {

NormEstimate dense_growth_estimate(const Group& group, int radius, double p, int iters,
                                   std::size_t budget) {
    // Arena large enough that the spreading iterate is exact while it fits;
    // truncation beyond the arena only lowers norms.
    const long long want = static_cast<long long>(radius) + iters;
    const int arena_radius = static_cast<int>(std::min<long long>(want, 1'000'000));
    auto arena = build_ball_within_budget(group, arena_radius, budget);
    MarkovOperator op(arena);

    GraphFunction f = make_delta(arena, 0);
    NormEstimate est;
    est.method = "dense-arena";
    double log_norm = 0.0, prev_root = 0.0;
    for (int t = 1; t <= iters; ++t) {
        f = op.apply(f); // Tail::Zero: exact until the support hits the arena sphere
        const double norm = lp_norm(f, p);
        if (norm == 0.0) break;
        log_norm += std::log(norm);
        const double root = std::exp(log_norm / t);
        est.iterations = t;
        if (root > est.value) est.value = root;
        est.stabilized = std::abs(root - prev_root) <= 1e-6 * std::max(root, 1e-300);
        prev_root = root;
        const double inv = 1.0 / norm;
        for (auto& x : f.values) x *= inv;
    }
    est.certified = true;
    return est;
}

} // namespace

NormEstimate operator_norm_estimate(const Group& group, int radius, double p, int iters,
                                    std::size_t budget) {
    if (!(p >= 1.0)) throw std::invalid_argument("operator_norm_estimate: p must be >= 1");
    if (iters < 1) throw std::invalid_argument("operator_norm_estimate: iters must be >= 1");
    if (group.family() == GroupFamily::Free) {
        NormEstimate est;
        est.method = "free-radial";
        double last_change = 1.0;
        est.value = free_growth_norm_estimate(group.spec().rank, p, iters, &last_change);
        est.iterations = iters;
        est.stabilized = last_change <= 1e-6;
        est.certified = true;
        (void)radius; // the exact radial iteration is radius-independent
        return est;
    }
    return dense_growth_estimate(group, radius, p, iters, budget);
}

NeumannResult neumann_apply(const GraphFunction& rhs, int terms, double p, double rho) {
    const auto& ball = *rhs.ball;
    if (ball.spec.family != GroupFamily::Free)
        throw std::invalid_argument("neumann_apply: the Neumann inverse of P - I needs ||P|| < 1; "
                                    "amenable families are rejected");
    if (terms < 0) throw std::invalid_argument("neumann_apply: terms must be >= 0");
    if (!(rho < 1.0) || !(rho >= 0.0))
        throw std::invalid_argument("neumann_apply: need a norm estimate rho in [0,1)");

    int support_radius = 0;
    for (std::size_t v = 0; v < ball.size(); ++v)
        if (rhs.values[v] != 0.0) support_radius = std::max(support_radius, static_cast<int>(ball.dist[v]));
    if (support_radius + terms > ball.radius)
        throw std::invalid_argument("neumann_apply: ball radius " + std::to_string(ball.radius) +
                                    " too small; each application spreads support by 1 and needs "
                                    "support radius + terms <= radius");

    MarkovOperator op(rhs.ball);
    GraphFunction term = rhs;
    term.tail = Tail::Zero;
    GraphFunction acc = term;
    for (int j = 1; j <= terms; ++j) {
        term = op.apply(term);
        for (std::size_t v = 0; v < acc.values.size(); ++v) acc.values[v] += term.values[v];
    }
    for (auto& x : acc.values) x = -x;

    NeumannResult out{std::move(acc), 0.0, rho};
    const double rhs_norm = lp_norm(rhs, p);
    out.tail_bound = rhs_norm * std::pow(rho, terms + 1) / (1.0 - rho);
    return out;
}

NeumannResult neumann_apply(const GraphFunction& rhs, int terms, double p) {
    if (rhs.ball->spec.family != GroupFamily::Free)
        throw std::invalid_argument("neumann_apply: the Neumann inverse of P - I needs ||P|| < 1; "
                                    "amenable families are rejected");
    Group group(rhs.ball->spec);
    const NormEstimate est = operator_norm_estimate(group, rhs.ball->radius, p, 1000);
    return neumann_apply(rhs, terms, p, est.value);
}

EndsPartition build_ends_partition(const Group& group, const CayleyBall& ball, int removal_radius) {
    if (group.family() != GroupFamily::Free)
        throw std::invalid_argument("build_ends_partition: removing a ball splits the Cayley graph "
                                    "into several infinite components only for the free family here");
    if (removal_radius < 0) throw std::invalid_argument("build_ends_partition: removal radius >= 0");
    if (ball.radius <= removal_radius + 1)
        throw std::invalid_argument("build_ends_partition: ball radius must exceed removal radius + 1");

    EndsPartition parts;
    for (std::size_t v = 0; v < ball.size(); ++v) {
        if (ball.dist[v] <= removal_radius) {
            parts.removed.push_back(static_cast<std::int32_t>(v));
        } else if (static_cast<int>(ball.vertices[v].bytes[0]) == 0) {
            parts.x1.push_back(static_cast<std::int32_t>(v)); // branch of the first generator
        } else {
            parts.x2.push_back(static_cast<std::int32_t>(v));
        }
    }
    return parts;
}

} // namespace pharmonic
