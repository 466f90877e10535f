#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pharmonic/function.hpp"

namespace pharmonic {

/// One row of a Folner profile: the ball G_k, its inner vertex boundary, the
/// amenability ratio, and the D(p) seminorm of f_k = chi_k / |G_k|^{1/p}.
struct FolnerRecord {
    int k = 0;
    std::int64_t size = 0;            // |G_k|
    std::int64_t boundary = 0;        // |dG_k|, inner vertex boundary
    std::int64_t boundary_edges = 0;  // edges leaving G_k
    double ratio = 0.0;               // |dG_k| / |G_k|
    double folner_norm = 0.0;         // ||f_k||_{D(p)}
    /// ||f_k||_{D(p)}^p equals 2 |boundary edges| / |G_k| exactly; with the
    /// vertex boundary the same expression is only an upper bound when each
    /// boundary vertex has one escaping edge (true on Z, false already on Z^2).
    bool edge_identity_ok = false;
    bool vertex_bound_ok = false;     // ||f_k||_{D(p)}^p <= 2 |dG_k| / |G_k|
};

/// Records for k = 1..k_max; needs the ball of radius k_max + 1.
std::vector<FolnerRecord> folner_profile(const Group& group, int k_max, double p,
                                         std::size_t budget = kDefaultVertexBudget);

struct SparseWitness {
    std::vector<std::int32_t> idx;
    std::vector<double> val;
    double lhs = 0.0, rhs = 0.0;
    std::string family; // which trial family produced it
};

struct InequalityReport {
    std::string id;
    int trials = 0;
    double empirical_constant = 0.0; // max over trials of LHS/RHS
    SparseWitness witness;
    bool pass = false;
    double stabilization_ratio = 0.0; // constant at R vs constant at smaller radius
    std::string note;
};

/// Uniform values on a random connected support of size <= max_size, grown by
/// seeded BFS with random frontier picks. Constants are excluded by resampling.
GraphFunction random_connected_function(std::shared_ptr<const CayleyBall> ball, Rng& rng,
                                        std::size_t max_size, bool nonnegative = false);

/// max ||u||_p / ||u||_{D(p)} over sub-ball indicator functions f_k, delta
/// functions and random finitely supported u on one ball.
InequalityReport gerl_max_ratio(std::shared_ptr<const CayleyBall> ball, double p, int trials,
                                std::uint64_t seed);

/// Two-radius search: nonamenable families pass when the constant at radius R
/// is within 20% of the one at R-2; amenable families pass when the f_k family
/// certifies divergence (constant >= (|G_k| / (2|dG_k|))^{1/p} at the largest k).
InequalityReport gerl_ratio_search(const Group& group, int radius, double p, int trials,
                                   std::uint64_t seed, std::size_t budget = kDefaultVertexBudget);

/// Condition S_d engine: empirical C = max ||f||_{d/(d-1)} / ||f||_{D(1)}.
InequalityReport sobolev_sd_check(std::shared_ptr<const CayleyBall> ball, double d, int trials,
                                  std::uint64_t seed);

struct IsoperimetricOptions {
    int max_ball_k = 8;       // sub-balls of radius 1..max_ball_k
    int max_box_n = 12;       // n x n x ... boxes (FreeAbelian only)
    int random_sets = 100;    // random connected subsets
    std::uint64_t seed = 1;
    std::size_t budget = kDefaultVertexBudget;
};

/// Condition (IS)_d engine: empirical C = max |A|^{d-1} / |dA|^d over balls,
/// boxes (Z^d) and random connected subsets.
InequalityReport isoperimetric_check(const Group& group, double d, const IsoperimetricOptions& opts);

struct MeanValueCheck {
    double lhs = 0.0; // ||f^t||_{D(1)}
    double rhs = 0.0; // 2t sum_g f^{t-1}(g) sum_s |(f*(s-1))(g)|
    bool pass = false;
};

/// Mean-value estimate for nonnegative finitely supported f and t >= 2.
MeanValueCheck mean_value_bound_check(const GraphFunction& f, double t);

/// Sobolev engine for ||f||_{pd/(d-p)} <= C' ||f||_{D(p)}; d > p required.
/// p > 2 is allowed but flagged in the note (stated hypothesis is p <= 2).
InequalityReport sobolev_pd_check(std::shared_ptr<const CayleyBall> ball, double p, double d,
                                  int trials, std::uint64_t seed);

struct ZExampleReport {
    double p = 0.0, p_prime = 0.0;
    std::int64_t n_terms = 0;
    double lp_pow_partial = 0.0;   // sum_{1..N} f(n)^p  (harmonic partial sum)
    double lp_pow_half = 0.0;      // sum_{1..N/2}
    double divergence_gap = 0.0;   // difference of the two; -> ln 2
    bool lp_diverging = false;     // gap >= 0.6 (meaningful for N >= 1e3)
    double lpp_pow_partial = 0.0;  // sum f(n)^{p'}
    double lpp_tail_ratio = 0.0;   // mass of [N/2, N] relative to the partial sum
    bool lpp_cauchy = false;       // tail ratio <= tail_eps
    double diff_sum = 0.0;         // sum_{1..N} |f(n-1)-f(n)|^p
    double diff_bound = 0.0;       // 1 + pi^2/6
    bool in_dp = true;             // diff_sum <= diff_bound
};

/// The explicit f(n) = n^{-1/p} on Z: not in L^p, in L^{p'} for p' > p, yet
/// of finite D(p) seminorm. Direct summation with compensated accumulation.
ZExampleReport z_example(double p, double p_prime, std::int64_t n, double tail_eps = 0.02);

/// True iff the extremes of h over region + its neighbors are attained on the
/// neighbor (boundary) part within tol, or h is constant within tol.
bool max_principle_scan(const GraphFunction& h, double p, const std::vector<std::int32_t>& region,
                        double tol);

} // namespace pharmonic
