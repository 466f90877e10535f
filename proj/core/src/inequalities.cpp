#include "pharmonic/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "pharmonic/group.hpp"

namespace pharmonic {

namespace {

std::vector<std::int32_t> sub_ball_indices(const CayleyBall& ball, int k) {
    std::vector<std::int32_t> set;
    for (std::size_t v = 0; v < ball.size(); ++v)
        if (ball.dist[v] <= k) set.push_back(static_cast<std::int32_t>(v));
    return set;
}

SparseWitness witness_from(const GraphFunction& f, double lhs, double rhs, std::string family) {
    SparseWitness w;
    for (std::size_t v = 0; v < f.values.size(); ++v) {
        if (f.values[v] != 0.0) {
            w.idx.push_back(static_cast<std::int32_t>(v));
            w.val.push_back(f.values[v]);
        }
    }
    w.lhs = lhs;
    w.rhs = rhs;
    w.family = std::move(family);
    return w;
}

// Track the maximal LHS/RHS ratio and its witness.
struct RatioTracker {
    double best = -1.0;
    SparseWitness witness;
    void offer(const GraphFunction& f, double lhs, double rhs, const char* family) {
        if (rhs <= 0.0) return; // constants and empty samples carry no information
        const double r = lhs / rhs;
        if (r > best) {
            best = r;
            witness = witness_from(f, lhs, rhs, family);
        }
    }
};

bool is_amenable_family(GroupFamily f) { return f != GroupFamily::Free; }

} // namespace

std::vector<FolnerRecord> folner_profile(const Group& group, int k_max, double p,
                                         std::size_t budget) {
    if (k_max < 1) throw std::invalid_argument("folner_profile: k_max >= 1");
    auto ball = build_ball(group, k_max + 1, budget); // boundary needs one extra shell
    std::vector<FolnerRecord> records;
    records.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        FolnerRecord rec;
        rec.k = k;
        const auto set = sub_ball_indices(*ball, k);
        rec.size = static_cast<std::int64_t>(set.size());
        rec.boundary = static_cast<std::int64_t>(subset_boundary(*ball, set).size());
        rec.boundary_edges = boundary_edge_count(*ball, set);
        rec.ratio = static_cast<double>(rec.boundary) / static_cast<double>(rec.size);

        GraphFunction fk = make_ball_indicator(ball, k);
        const double scale = std::pow(static_cast<double>(rec.size), -1.0 / p);
        for (auto& v : fk.values) v *= scale;
        const double seminorm_pow = dp_seminorm_pow(fk, p);
        rec.folner_norm = std::pow(seminorm_pow, 1.0 / p);

        const double edge_value = 2.0 * static_cast<double>(rec.boundary_edges) / static_cast<double>(rec.size);
        const double vertex_value = 2.0 * static_cast<double>(rec.boundary) / static_cast<double>(rec.size);
        rec.edge_identity_ok = std::abs(seminorm_pow - edge_value) <= 1e-12 * std::max(1.0, edge_value);
        rec.vertex_bound_ok = seminorm_pow <= vertex_value + 1e-12;
        records.push_back(rec);
    }
    return records;
}

GraphFunction random_connected_function(std::shared_ptr<const CayleyBall> ball, Rng& rng,
                                        std::size_t max_size, bool nonnegative) {
    if (ball->interior.empty()) throw std::invalid_argument("random_connected_function: empty interior");
    for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t target = 1 + rng.below(std::max<std::size_t>(max_size, 1));
        std::vector<std::int32_t> support;
        std::vector<std::uint8_t> used(ball->size(), 0);
        std::vector<std::int32_t> frontier;
        const std::int32_t start = ball->interior[rng.below(ball->interior.size())];
        support.push_back(start);
        used[start] = 1;
        frontier.push_back(start);
        while (support.size() < target && !frontier.empty()) {
            const std::size_t pick = rng.below(frontier.size());
            const std::int32_t v = frontier[pick];
            std::vector<std::int32_t> fresh;
            for (int s = 0; s < ball->degree; ++s) {
                const std::int32_t j = ball->neighbor(v, s);
                if (j >= 0 && !used[j] && ball->is_interior(j)) fresh.push_back(j);
            }
            if (fresh.empty()) {
                frontier[pick] = frontier.back();
                frontier.pop_back();
                continue;
            }
            const std::int32_t w = fresh[rng.below(fresh.size())];
            used[w] = 1;
            support.push_back(w);
            frontier.push_back(w);
        }
        GraphFunction f;
        f.ball = ball;
        f.values.assign(ball->size(), 0.0);
        f.tail = Tail::Zero;
        bool all_zero = true;
        for (std::int32_t v : support) {
            const double x = nonnegative ? rng.uniform01() : rng.uniform(-1.0, 1.0);
            f.values[v] = x;
            if (x != 0.0) all_zero = false;
        }
        if (!all_zero) return f;
    }
    throw std::runtime_error("random_connected_function: could not draw a nonzero sample");
}

InequalityReport gerl_max_ratio(std::shared_ptr<const CayleyBall> ball, double p, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("gerl_max_ratio: trials >= 1");
    InequalityReport report;
    report.id = "gerl";
    report.trials = trials;
    RatioTracker tracker;

    // Sub-ball indicator family f_k (normalized) for every k that fits.
    for (int k = 0; k <= ball->radius - 1; ++k) {
        GraphFunction fk = make_ball_indicator(ball, k);
        const double lhs = lp_norm(fk, p);
        const double rhs = dp_seminorm(fk, p);
        tracker.offer(fk, lhs, rhs, "indicator");
    }
    // Delta functions on a spread of vertices.
    {
        Rng rng = Rng::for_trial(seed, 0xd);
        for (int i = 0; i < 8; ++i) {
            const std::int32_t v =
                (i == 0) ? 0 : ball->interior[rng.below(ball->interior.size())];
            GraphFunction d = make_delta(ball, v);
            tracker.offer(d, lp_norm(d, p), dp_seminorm(d, p), "delta");
        }
    }
    // Random finitely supported functions on connected supports.
    const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(tr));
        GraphFunction u = random_connected_function(ball, rng, max_support);
        tracker.offer(u, lp_norm(u, p), dp_seminorm(u, p), "random");
    }
    report.empirical_constant = tracker.best;
    report.witness = tracker.witness;
    return report;
}

InequalityReport gerl_ratio_search(const Group& group, int radius, double p, int trials,
                                   std::uint64_t seed, std::size_t budget) {
    if (radius < 4) throw std::invalid_argument("gerl_ratio_search: radius >= 4");
    auto ball = build_ball(group, radius, budget);
    InequalityReport report = gerl_max_ratio(ball, p, trials, seed);

    if (is_amenable_family(group.family())) {
        // The f_k family certifies divergence of the best constant.
        const int k = radius - 1;
        const auto set = sub_ball_indices(*ball, k);
        const auto boundary = subset_boundary(*ball, set);
        const double certificate =
            std::pow(static_cast<double>(set.size()) / (2.0 * static_cast<double>(boundary.size())),
                     1.0 / p);
        report.pass = report.empirical_constant >= certificate;
        report.note = "amenable family: f_k certificate (|G_k|/(2|dG_k|))^{1/p} = " +
                      std::to_string(certificate);
        report.stabilization_ratio = 0.0;
    } else {
        auto smaller = build_ball(group, radius - 2, budget);
        InequalityReport inner = gerl_max_ratio(smaller, p, trials, seed);
        report.stabilization_ratio = report.empirical_constant / inner.empirical_constant;
        report.pass = report.stabilization_ratio <= 1.2 && report.stabilization_ratio >= 1.0 / 1.2;
        report.note = "nonamenable family: constants at R and R-2 within 20%";
    }
    return report;
}

InequalityReport sobolev_sd_check(std::shared_ptr<const CayleyBall> ball, double d, int trials,
                                  std::uint64_t seed) {
    if (!(d > 1.0)) throw std::invalid_argument("sobolev_sd_check: d > 1");
    InequalityReport report;
    report.id = "sobolev-s_d";
    report.trials = trials;
    const double target = d / (d - 1.0);
    RatioTracker tracker;
    for (int k = 0; k <= ball->radius - 1; ++k) {
        GraphFunction chi = make_ball_indicator(ball, k);
        tracker.offer(chi, lp_norm(chi, target), dp_seminorm_pow(chi, 1.0), "indicator");
    }
    {
        GraphFunction delta = make_delta(ball, 0);
        tracker.offer(delta, lp_norm(delta, target), dp_seminorm_pow(delta, 1.0), "delta");
    }
    const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(tr));
        GraphFunction f = random_connected_function(ball, rng, max_support);
        tracker.offer(f, lp_norm(f, target), dp_seminorm_pow(f, 1.0), "random");
    }
    report.empirical_constant = tracker.best;
    report.witness = tracker.witness;
    report.pass = tracker.best > 0.0;
    return report;
}

InequalityReport isoperimetric_check(const Group& group, double d, const IsoperimetricOptions& opts) {
    if (!(d >= 1.0)) throw std::invalid_argument("isoperimetric_check: d >= 1");
    InequalityReport report;
    report.id = "isoperimetric-is_d";

    double best = -1.0;
    std::string best_family;
    std::int64_t best_size = 0, best_boundary = 0;

    auto offer = [&](const std::vector<std::int32_t>& set, const CayleyBall& ball, const char* family) {
        if (set.empty()) return;
        const auto boundary = subset_boundary(ball, set);
        const double ratio = std::pow(static_cast<double>(set.size()), d - 1.0) /
                             std::pow(static_cast<double>(boundary.size()), d);
        ++report.trials;
        if (ratio > best) {
            best = ratio;
            best_family = family;
            best_size = static_cast<std::int64_t>(set.size());
            best_boundary = static_cast<std::int64_t>(boundary.size());
        }
    };

    // Sub-balls.
    {
        auto ball = build_ball_within_budget(group, opts.max_ball_k + 1, opts.budget);
        for (int k = 0; k <= std::min(opts.max_ball_k, ball->radius - 1); ++k)
            offer(sub_ball_indices(*ball, k), *ball, "ball");
    }
    // Boxes, FreeAbelian only: {0..n-1}^d needs word radius d_rank * (n-1).
    if (group.family() == GroupFamily::FreeAbelian) {
        const int rank = group.spec().rank;
        for (int n = 2; n <= opts.max_box_n; ++n) {
            const int need = rank * (n - 1) + 1;
            std::shared_ptr<const CayleyBall> ball;
            try {
                ball = build_ball(group, need, opts.budget);
            } catch (const VertexBudgetExceeded&) {
                break;
            }
            std::vector<std::int32_t> box;
            for (std::size_t v = 0; v < ball->size(); ++v) {
                bool inside = true;
                for (int i = 0; i < rank && inside; ++i) {
                    Element g = ball->vertices[v];
                    // coordinates are int32 little-endian
                    std::int32_t c;
                    std::memcpy(&c, g.bytes.data() + 4 * i, 4);
                    inside = c >= 0 && c < n;
                }
                if (inside) box.push_back(static_cast<std::int32_t>(v));
            }
            offer(box, *ball, "box");
        }
    }
    // Random connected subsets.
    {
        auto ball = build_ball_within_budget(group, opts.max_ball_k + 2, opts.budget);
        const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
        for (int tr = 0; tr < opts.random_sets; ++tr) {
            Rng rng = Rng::for_trial(opts.seed, static_cast<std::uint64_t>(tr));
            GraphFunction f = random_connected_function(ball, rng, max_support);
            std::vector<std::int32_t> set;
            for (std::size_t v = 0; v < f.values.size(); ++v)
                if (f.values[v] != 0.0) set.push_back(static_cast<std::int32_t>(v));
            offer(set, *ball, "random");
        }
    }

    report.empirical_constant = best;
    report.pass = best > 0.0;
    report.note = "max family: " + best_family + " |A| = " + std::to_string(best_size) +
                  " |dA| = " + std::to_string(best_boundary);
    return report;
}

MeanValueCheck mean_value_bound_check(const GraphFunction& f, double t) {
    if (!(t >= 2.0)) throw std::invalid_argument("mean_value_bound_check: t >= 2");
    for (std::size_t v = 0; v < f.values.size(); ++v) {
        if (f.values[v] < 0.0) throw std::invalid_argument("mean_value_bound_check: f must be >= 0");
        if (f.values[v] != 0.0 && !f.ball->is_interior(static_cast<std::int32_t>(v)))
            throw std::invalid_argument("mean_value_bound_check: support must stay in the interior");
    }
    GraphFunction ft = f;
    for (auto& v : ft.values) v = std::pow(v, t);
    MeanValueCheck check;
    check.lhs = dp_seminorm_pow(ft, 1.0);

    KahanSum rhs;
    for (std::size_t v = 0; v < f.values.size(); ++v) {
        double grad1 = 0.0; // sum_s |(f*(s-1))(g)|
        for (int s = 0; s < f.ball->degree; ++s) {
            auto nb = neighbor_value(f, static_cast<std::int32_t>(v), s);
            grad1 += std::abs((nb ? *nb : 0.0) - f.values[v]);
        }
        if (f.values[v] > 0.0) rhs.add(std::pow(f.values[v], t - 1.0) * grad1);
    }
    check.rhs = 2.0 * t * rhs.value();
    check.pass = check.lhs <= check.rhs + 1e-12;
    return check;
}

InequalityReport sobolev_pd_check(std::shared_ptr<const CayleyBall> ball, double p, double d,
                                  int trials, std::uint64_t seed) {
    if (!(d > p)) throw std::invalid_argument("sobolev_pd_check: requires d > p "
                                              "(the exponent pd/(d-p) is undefined otherwise)");
    InequalityReport report;
    report.id = "sobolev-prop-5.2";
    report.trials = trials;
    if (p > 2.0) report.note = "p > 2: used beyond the stated hypothesis 2 >= p";
    const double target = p * d / (d - p);
    RatioTracker tracker;
    for (int k = 0; k <= ball->radius - 1; ++k) {
        GraphFunction chi = make_ball_indicator(ball, k);
        tracker.offer(chi, lp_norm(chi, target), dp_seminorm(chi, p), "indicator");
    }
    {
        GraphFunction delta = make_delta(ball, 0);
        tracker.offer(delta, lp_norm(delta, target), dp_seminorm(delta, p), "delta");
    }
    const std::size_t max_support = std::max<std::size_t>(1, ball->interior.size() / 2);
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(tr));
        GraphFunction f = random_connected_function(ball, rng, max_support);
        tracker.offer(f, lp_norm(f, target), dp_seminorm(f, p), "random");
    }
    report.empirical_constant = tracker.best;
    report.witness = tracker.witness;
    report.pass = tracker.best > 0.0;
    return report;
}

ZExampleReport z_example(double p, double p_prime, std::int64_t n, double tail_eps) {
    if (!(p > 1.0) || !(p_prime > p)) throw std::invalid_argument("z_example: need 1 < p < p'");
    if (n < 10) throw std::invalid_argument("z_example: N >= 10");
    ZExampleReport rep;
    rep.p = p;
    rep.p_prime = p_prime;
    rep.n_terms = n;

    auto f = [&](std::int64_t m) { return m >= 1 ? std::pow(static_cast<double>(m), -1.0 / p) : 0.0; };

    KahanSum lp_sum, lp_half, lpp_sum, lpp_head, diff;
    const std::int64_t half = n / 2;
    for (std::int64_t m = 1; m <= n; ++m) {
        const double fm = f(m);
        lp_sum.add(std::pow(fm, p)); // = 1/m, the harmonic series
        if (m <= half) lp_half.add(std::pow(fm, p));
        const double q_term = std::pow(fm, p_prime);
        lpp_sum.add(q_term);
        if (m < half) lpp_head.add(q_term);
        diff.add(std::pow(std::abs(f(m - 1) - fm), p));
    }
    rep.lp_pow_partial = lp_sum.value();
    rep.lp_pow_half = lp_half.value();
    rep.divergence_gap = rep.lp_pow_partial - rep.lp_pow_half;
    rep.lp_diverging = rep.divergence_gap >= 0.6;
    rep.lpp_pow_partial = lpp_sum.value();
    rep.lpp_tail_ratio = (lpp_sum.value() - lpp_head.value()) / lpp_sum.value();
    rep.lpp_cauchy = rep.lpp_tail_ratio <= tail_eps;
    rep.diff_sum = diff.value();
    rep.diff_bound = 1.0 + std::numbers::pi * std::numbers::pi / 6.0;
    rep.in_dp = rep.diff_sum <= rep.diff_bound;
    return rep;
}

bool max_principle_scan(const GraphFunction& h, double p, const std::vector<std::int32_t>& region,
                        double tol) {
    (void)p;
    if (region.empty()) return true;
    std::vector<std::uint8_t> in_region(h.ball->size(), 0);
    for (std::int32_t v : region) in_region[v] = 1;

    double region_lo = h.values[region[0]], region_hi = region_lo;
    for (std::int32_t v : region) {
        region_lo = std::min(region_lo, h.values[v]);
        region_hi = std::max(region_hi, h.values[v]);
    }
    bool have_rim = false;
    double rim_lo = 0.0, rim_hi = 0.0;
    for (std::int32_t v : region) {
        for (int s = 0; s < h.ball->degree; ++s) {
            const std::int32_t j = h.ball->neighbor(v, s);
            if (j < 0 || in_region[j]) continue;
            if (!have_rim) {
                rim_lo = rim_hi = h.values[j];
                have_rim = true;
            } else {
                rim_lo = std::min(rim_lo, h.values[j]);
                rim_hi = std::max(rim_hi, h.values[j]);
            }
        }
    }
    if (!have_rim) return region_hi - region_lo <= tol; // no boundary: constants only
    return region_hi <= rim_hi + tol && region_lo >= rim_lo - tol;
}

} // namespace pharmonic
