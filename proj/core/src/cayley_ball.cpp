#include "pharmonic/cayley_ball.hpp"

#include <algorithm>
#include <unordered_map>

namespace pharmonic {

namespace {

std::shared_ptr<const CayleyBall> build_impl(const Group& group, int radius, std::size_t budget,
                                             bool stop_at_budget) {
    if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");

    auto ball = std::make_shared<CayleyBall>();
    ball->spec = group.spec();
    ball->radius = radius;
    ball->degree = group.num_generators();

    std::unordered_map<Element, std::int32_t, ElementHash> index;
    ball->vertices.push_back(group.identity());
    ball->dist.push_back(0);
    index.emplace(ball->vertices[0], 0);

    std::size_t head = 0;
    std::int32_t truncated_at = -1;
    while (head < ball->vertices.size() && truncated_at < 0) {
        const std::int32_t d = ball->dist[head];
        if (d == radius) break; // BFS order: all remaining vertices are at full radius
        const Element g = ball->vertices[head];
        for (int s = 0; s < ball->degree; ++s) {
            Element h = group.apply_generator(g, s);
            if (index.find(h) != index.end()) continue;
            if (ball->vertices.size() >= budget) {
                if (stop_at_budget) {
                    truncated_at = d;
                    break;
                }
                throw VertexBudgetExceeded("vertex budget " + std::to_string(budget) +
                                           " exceeded while building " + group.spec().name() +
                                           " ball of radius " + std::to_string(radius));
            }
            index.emplace(h, static_cast<std::int32_t>(ball->vertices.size()));
            ball->vertices.push_back(std::move(h));
            ball->dist.push_back(d + 1);
        }
        ++head;
    }

    if (truncated_at >= 0) {
        // BFS order guarantees every vertex at distance < truncated_at was fully
        // expanded, so shells 0..truncated_at are complete; shell truncated_at+1
        // may be partial and is dropped.
        std::size_t m = 0;
        while (m < ball->vertices.size() && ball->dist[m] <= truncated_at) ++m;
        ball->vertices.resize(m);
        ball->dist.resize(m);
        ball->radius = truncated_at;
        index.clear();
        for (std::size_t i = 0; i < ball->vertices.size(); ++i)
            index.emplace(ball->vertices[i], static_cast<std::int32_t>(i));
    }

    const std::size_t n = ball->vertices.size();
    ball->adjacency.assign(n * ball->degree, -1);
    ball->interior_mask.assign(n, 1);
    for (std::size_t v = 0; v < n; ++v) {
        for (int s = 0; s < ball->degree; ++s) {
            // stored neighbor: g * s^{-1}; symmetric S gives the same edge set as g * s
            Element h = group.apply_generator(ball->vertices[v], group.inverse_generator(s));
            auto it = index.find(h);
            if (it != index.end()) {
                ball->adjacency[v * ball->degree + s] = it->second;
            } else {
                ball->interior_mask[v] = 0;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        (ball->interior_mask[v] ? ball->interior : ball->boundary).push_back(static_cast<std::int32_t>(v));
    }

    ball->sorted_index.resize(n);
    for (std::size_t i = 0; i < n; ++i) ball->sorted_index[i] = static_cast<std::int32_t>(i);
    std::sort(ball->sorted_index.begin(), ball->sorted_index.end(),
              [&](std::int32_t a, std::int32_t b) { return ball->vertices[a].bytes < ball->vertices[b].bytes; });
    return ball;
}

} // namespace

std::int32_t CayleyBall::find(const Element& e) const {
    auto it = std::lower_bound(sorted_index.begin(), sorted_index.end(), e,
                               [&](std::int32_t idx, const Element& key) { return vertices[idx].bytes < key.bytes; });
    if (it == sorted_index.end() || !(vertices[*it] == e)) return -1;
    return *it;
}

std::shared_ptr<const CayleyBall> build_ball(const Group& group, int radius, std::size_t budget) {
    return build_impl(group, radius, budget, false);
}

std::shared_ptr<const CayleyBall> build_ball_within_budget(const Group& group, int max_radius,
                                                           std::size_t budget) {
    return build_impl(group, max_radius, budget, true);
}

std::vector<std::int32_t> subset_boundary(const CayleyBall& ball, const std::vector<std::int32_t>& set) {
    std::vector<std::uint8_t> in_set(ball.size(), 0);
    for (std::int32_t v : set) {
        if (v < 0 || static_cast<std::size_t>(v) >= ball.size())
            throw std::out_of_range("subset_boundary: vertex index outside ball");
        if (ball.dist[v] >= ball.radius)
            throw std::invalid_argument(
                "subset_boundary: set touches the outer sphere; neighbor membership is "
                "undecidable within this ball (use radius >= max word length in A + 1)");
        in_set[v] = 1;
    }
    std::vector<std::int32_t> result;
    for (std::int32_t v : set) {
        for (int s = 0; s < ball.degree; ++s) {
            const std::int32_t xs = ball.neighbor_right(v, s); // x * s, in-ball by the distance check
            if (!in_set[xs]) {
                result.push_back(v);
                break;
            }
        }
    }
    return result;
}

std::int64_t boundary_edge_count(const CayleyBall& ball, const std::vector<std::int32_t>& set) {
    std::vector<std::uint8_t> in_set(ball.size(), 0);
    for (std::int32_t v : set) {
        if (ball.dist[v] >= ball.radius)
            throw std::invalid_argument("boundary_edge_count: set touches the outer sphere");
        in_set[v] = 1;
    }
    std::int64_t crossings = 0;
    for (std::int32_t v : set) {
        for (int s = 0; s < ball.degree; ++s) {
            if (!in_set[ball.neighbor(v, s)]) ++crossings; // ordered pairs leaving the set
        }
    }
    return crossings; // one ordered pair per boundary edge from the inside
}

} // namespace pharmonic
