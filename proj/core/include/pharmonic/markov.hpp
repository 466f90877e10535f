#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pharmonic/free_radial.hpp"
#include "pharmonic/function.hpp"

namespace pharmonic {

/// The averaging operator f -> f*P, P = (1/|S|) sum_{s in S} s.
/// Row-stochastic on the interior and linear; pure, safe to share.
class MarkovOperator {
public:
    explicit MarkovOperator(std::shared_ptr<const CayleyBall> ball) : ball_(std::move(ball)) {}

    const std::shared_ptr<const CayleyBall>& ball() const { return ball_; }

    /// (f*P)(g) = (1/|S|) sum_s f(g s^{-1}); throws on unresolvable vertices.
    GraphFunction apply(const GraphFunction& f) const;

    /// Same, but unresolvable vertices are flagged instead of throwing.
    PartialFunction apply_partial(const GraphFunction& f) const;

private:
    std::shared_ptr<const CayleyBall> ball_;
};

struct NormEstimate {
    double value = 0.0;       // lower bound on ||P||_{l^p}
    bool certified = true;    // true: genuine lower bound (||P^t|| <= ||P||^t)
    bool stabilized = false;  // relative change of the t-th root fell below 1e-6
    int iterations = 0;       // growth steps actually used
    std::string method;       // "free-radial" or "dense-arena"
};

/// Growth-rate estimate max_{t<=iters} ||delta_e * P^t||_p^{1/t}.
/// Free groups use the exact branch-radial iteration (the estimate is then a
/// property of the group, independent of the nominal radius). Other families
/// iterate on a dense arena ball, enlarged beyond `radius` as far as the
/// vertex budget allows; arena truncation only lowers the estimate, so the
/// lower-bound certificate survives. p = 2 is sharp in the limit
/// (self-adjointness); other p are flagged as potentially far from sharp.
NormEstimate operator_norm_estimate(const Group& group, int radius, double p, int iters,
                                    std::size_t budget = kDefaultVertexBudget);

struct NeumannResult {
    GraphFunction value;   // -sum_{j=0}^{K} rhs*P^j
    double tail_bound;     // ||rhs||_p rho^{K+1} / (1-rho)
    double rho;            // norm estimate used for the bound
};

/// Truncated Neumann series for F = -(sum_k P^k), the inverse of P - I on
/// nonamenable groups. rhs must be finitely supported with
/// support radius + K <= ball radius so every application stays exact.
/// Amenable families are rejected: with ||P|| = 1 the series has no meaning.
NeumannResult neumann_apply(const GraphFunction& rhs, int terms, double p, double rho);
/// Same, computing the norm estimate rho itself (1000 growth steps).
NeumannResult neumann_apply(const GraphFunction& rhs, int terms, double p);

/// Vertex sets witnessing >= 2 ends on the free group: `removed` is the ball
/// of radius r, X1 the branch of the first generator, X2 the remaining
/// branches. No in-ball edge joins X1 to X2.
struct EndsPartition {
    std::vector<std::int32_t> removed;
    std::vector<std::int32_t> x1;
    std::vector<std::int32_t> x2;
};

EndsPartition build_ends_partition(const Group& group, const CayleyBall& ball, int removal_radius);

} // namespace pharmonic
