#include "pharmonic/function.hpp"

#include <stdexcept>

namespace pharmonic {

Exponents Exponents::from_p(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("Exponents: p must be > 1");
    return {p, p / (p - 1.0)};
}

GraphFunction make_constant(std::shared_ptr<const CayleyBall> ball, double c, Tail tail) {
    GraphFunction f;
    f.values.assign(ball->size(), c);
    f.ball = std::move(ball);
    f.tail = tail;
    return f;
}

GraphFunction make_delta(std::shared_ptr<const CayleyBall> ball, std::int32_t vertex) {
    GraphFunction f;
    f.values.assign(ball->size(), 0.0);
    f.values.at(vertex) = 1.0;
    f.ball = std::move(ball);
    f.tail = Tail::Zero;
    return f;
}

GraphFunction make_ball_indicator(std::shared_ptr<const CayleyBall> ball, int sub_radius) {
    GraphFunction f;
    f.values.assign(ball->size(), 0.0);
    for (std::size_t v = 0; v < ball->size(); ++v)
        if (ball->dist[v] <= sub_radius) f.values[v] = 1.0;
    f.ball = std::move(ball);
    f.tail = Tail::Zero;
    return f;
}

GraphFunction make_random(std::shared_ptr<const CayleyBall> ball, Rng& rng) {
    GraphFunction f;
    f.values.resize(ball->size());
    for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
    f.ball = std::move(ball);
    return f;
}

std::optional<double> neighbor_value(const GraphFunction& f, std::int32_t v, int s) {
    const std::int32_t j = f.ball->neighbor(v, s);
    if (j >= 0) return f.values[j];
    switch (f.tail) {
        case Tail::Zero:
            return 0.0;
        case Tail::Formula: {
            if (f.ball->spec.family != GroupFamily::FreeAbelian || f.ball->spec.rank != 1)
                throw std::logic_error("Tail::Formula is supported on z^1 only");
            Group group(f.ball->spec);
            // neighbor is g * s^{-1}: coordinate shifts by -1 for s = +e1, +1 for s = -e1
            const std::int64_t n = group.z_coordinate(f.ball->vertices[v]) + (s % 2 == 0 ? -1 : +1);
            return f.formula(n);
        }
        case Tail::None:
            return std::nullopt;
    }
    return std::nullopt;
}

PartialFunction translate_diff(const GraphFunction& f, int s) {
    PartialFunction out;
    out.ball = f.ball;
    out.values.assign(f.ball->size(), 0.0);
    out.defined.assign(f.ball->size(), 0);
    for (std::size_t v = 0; v < f.ball->size(); ++v) {
        auto nb = neighbor_value(f, static_cast<std::int32_t>(v), s);
        if (!nb) continue;
        out.values[v] = *nb - f.values[v];
        out.defined[v] = 1;
        ++out.num_defined;
    }
    return out;
}

double lp_norm_pow(const GraphFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    KahanSum sum;
    for (double v : f.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("lp_norm: non-finite value");
        sum.add(std::pow(std::abs(v), p));
    }
    return sum.value();
}

double lp_norm(const GraphFunction& f, double p) { return std::pow(lp_norm_pow(f, p), 1.0 / p); }

double dp_seminorm_pow(const GraphFunction& f, double p, bool strict) {
    if (!(p >= 1.0)) throw std::invalid_argument("dp_seminorm: p must be >= 1");
    KahanSum sum;
    const int deg = f.ball->degree;
    for (std::size_t v = 0; v < f.ball->size(); ++v) {
        for (int s = 0; s < deg; ++s) {
            auto nb = neighbor_value(f, static_cast<std::int32_t>(v), s);
            if (!nb) {
                if (strict)
                    throw std::invalid_argument("dp_seminorm: unresolvable boundary neighbor "
                                                "(no tail rule) with strict coverage requested");
                continue;
            }
            sum.add(std::pow(std::abs(*nb - f.values[v]), p));
        }
    }
    return sum.value();
}

double dp_seminorm(const GraphFunction& f, double p, bool strict) {
    return std::pow(dp_seminorm_pow(f, p, strict), 1.0 / p);
}

double dp_norm(const GraphFunction& f, double p, bool strict) {
    const double at_identity = std::pow(std::abs(f.values[0]), p); // vertex 0 is e
    return std::pow(dp_seminorm_pow(f, p, strict) + at_identity, 1.0 / p);
}

double p_laplacian(const GraphFunction& f, double p, std::int32_t g) {
    if (!(p > 1.0)) throw std::invalid_argument("p_laplacian: p must be > 1");
    double acc = 0.0;
    for (int s = 0; s < f.ball->degree; ++s) {
        auto nb = neighbor_value(f, g, s);
        if (!nb)
            throw std::invalid_argument("p_laplacian: vertex " + std::to_string(g) +
                                        " has an unresolvable neighbor (boundary without tail rule)");
        acc += signed_power(*nb - f.values[g], p - 1.0);
    }
    return acc;
}

double pairing(const GraphFunction& h, const GraphFunction& f, double p) {
    if (h.ball != f.ball)
        throw std::invalid_argument("pairing: functions must share a ball");
    if (!(p > 1.0)) throw std::invalid_argument("pairing: p must be > 1");
    KahanSum sum;
    const int deg = h.ball->degree;
    for (std::size_t v = 0; v < h.ball->size(); ++v) {
        for (int s = 0; s < deg; ++s) {
            auto hn = neighbor_value(h, static_cast<std::int32_t>(v), s);
            auto fn = neighbor_value(f, static_cast<std::int32_t>(v), s);
            if (!hn || !fn) continue;
            const double hd = *hn - h.values[v];
            const double fd = *fn - f.values[v];
            sum.add(signed_power(hd, p - 1.0) * fd);
        }
    }
    return sum.value();
}

HarmonicityCheck is_p_harmonic(const GraphFunction& f, double p,
                               const std::vector<std::int32_t>& region, double tol) {
    double worst = 0.0;
    for (std::int32_t g : region) worst = std::max(worst, std::abs(p_laplacian(f, p, g)));
    return {worst <= tol, worst};
}

} // namespace pharmonic
