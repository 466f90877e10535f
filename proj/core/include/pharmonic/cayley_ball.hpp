#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pharmonic/group.hpp"

namespace pharmonic {

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

struct VertexBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite radius-R ball of a Cayley graph. Immutable once built; safe to
/// share across threads. Vertex 0 is the identity and vertices are indexed
/// in BFS discovery order with the fixed generator order of the family, so
/// every derived output is deterministic.
class CayleyBall {
public:
    GroupSpec spec;
    int radius = 0;
    int degree = 0; // |S|

    std::vector<Element> vertices;        // BFS order, vertices[0] = e
    std::vector<std::int32_t> dist;       // word length
    /// adjacency[v*degree + s] = index of g_v * s^{-1} (the convolution
    /// convention f(g s^{-1})), or -1 when that element lies outside the ball.
    std::vector<std::int32_t> adjacency;
    std::vector<std::uint8_t> interior_mask;
    std::vector<std::int32_t> interior;   // all |S| neighbors in-ball
    std::vector<std::int32_t> boundary;

    std::size_t size() const { return vertices.size(); }
    std::int32_t neighbor(std::int32_t v, int s) const { return adjacency[static_cast<std::size_t>(v) * degree + s]; }
    /// Index of g_v * s (right multiplication), -1 if outside the ball.
    std::int32_t neighbor_right(std::int32_t v, int s) const { return neighbor(v, s ^ 1); }
    bool is_interior(std::int32_t v) const { return interior_mask[v] != 0; }

    /// Binary search over a sorted index; -1 if the element is not in the ball.
    std::int32_t find(const Element& e) const;

    std::vector<std::int32_t> sorted_index; // vertex indices sorted by element bytes
};

/// Breadth-first materialization of the ball of the given radius.
/// Throws VertexBudgetExceeded when the ball would exceed `budget` vertices.
std::shared_ptr<const CayleyBall> build_ball(const Group& group, int radius,
                                             std::size_t budget = kDefaultVertexBudget);

/// Largest complete ball of radius <= max_radius that fits in `budget`.
std::shared_ptr<const CayleyBall> build_ball_within_budget(const Group& group, int max_radius,
                                                           std::size_t budget = kDefaultVertexBudget);

/// Inner vertex boundary dA = { x in A : exists s in S with xs not in A }.
/// Membership of xs is decided in the group, so every vertex of A must lie at
/// distance < ball.radius; otherwise a std::invalid_argument is thrown.
std::vector<std::int32_t> subset_boundary(const CayleyBall& ball, const std::vector<std::int32_t>& set);

/// Number of unordered edges with exactly one endpoint in `set` (boundary
/// edges). Same decidability requirement as subset_boundary.
std::int64_t boundary_edge_count(const CayleyBall& ball, const std::vector<std::int32_t>& set);

} // namespace pharmonic
