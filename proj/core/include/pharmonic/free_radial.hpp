#pragma once

#include <memory>
#include <vector>

#include "pharmonic/function.hpp"

namespace pharmonic {

/// Function on the free group F_k that depends only on the first letter and
/// the word length ("branch-radial"). The class is closed under convolution
/// with the averaging element P, which is what makes the deep-radius
/// constructions of the harmonic pipeline exact: a ball of radius 45 in F_2
/// has ~5.9e21 vertices, but a branch-radial function on it is 4x45 numbers.
///
/// For word length n > max_len the value is tail[branch] (branch-constant
/// far field); finitely supported functions have zero tails.
struct RadialFunction {
    int branches = 0;                  // 2k
    int max_len = 0;                   // stored shells 1..max_len
    double origin = 0.0;               // value at e
    std::vector<double> shells;        // shells[b * max_len + (n-1)]
    std::vector<double> tail;          // size `branches`; value for n > max_len

    double at(int branch, int len) const {
        if (len == 0) return origin;
        if (len > max_len) return tail[branch];
        return shells[static_cast<std::size_t>(branch) * max_len + (len - 1)];
    }
    bool has_zero_tail() const;
};

RadialFunction make_radial_zero(int branches, int max_len);

/// The step function of the ends construction: 0 on the removed ball of
/// radius r, branch_values[b] on the branch of generator index b beyond it.
RadialFunction make_ends_step(int branches, int removal_radius, const std::vector<double>& branch_values,
                              int max_len);

/// f * P with P = (1/|S|) sum_s s, computed exactly (output max_len grows by
/// one; the branch-constant tail is invariant).
RadialFunction radial_markov_apply(const RadialFunction& f, int max_capacity);

/// f * (P - I); requires nothing beyond the tail invariance above.
RadialFunction radial_markov_minus_identity(const RadialFunction& f, int max_capacity);

RadialFunction radial_add(const RadialFunction& a, const RadialFunction& b, double bscale);

/// l^p norm over the whole group; requires a zero tail (else infinite).
/// Sphere sizes 2k (2k-1)^{n-1} enter as weights.
double radial_lp_norm(const RadialFunction& f, double p);

/// sup and inf over the whole group (tails included).
std::pair<double, double> radial_range(const RadialFunction& f);

/// Word lengths carrying a nonzero value (|value| > tol), for support scans.
std::vector<int> radial_support_lengths(const RadialFunction& f, double tol = 0.0);

/// Restriction of a branch-radial function to a materialized ball.
GraphFunction materialize(const RadialFunction& f, const Group& group,
                          std::shared_ptr<const CayleyBall> ball);

/// Certified lower bound on ||P||_{l^p -> l^p} for the free group F_k:
/// max over t <= iters of ||delta_e * P^t||_p^{1/t}, evaluated exactly on the
/// fully radial subspace (||P^t|| <= ||P||^t gives certification). For p = 2
/// this converges to the Kesten norm sqrt(2k-1)/k from below. When given,
/// last_rel_change receives the relative move of the final growth step.
double free_growth_norm_estimate(int k, double p, int iters, double* last_rel_change = nullptr);

} // namespace pharmonic
