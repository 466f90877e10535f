#include "pharmonic/harmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace pharmonic {

HarmonicConstruction construct_harmonic(const Group& group, double p, int ball_radius,
                                        int removal_radius, int terms, int norm_iters) {
    if (group.family() != GroupFamily::Free)
        throw std::invalid_argument("construct_harmonic: needs a nonamenable group with >= 2 ends; "
                                    "only the free family qualifies here");
    if (!(p > 1.0)) throw std::invalid_argument("construct_harmonic: p must be > 1");
    if (removal_radius < 0) throw std::invalid_argument("construct_harmonic: removal radius >= 0");
    if (ball_radius < removal_radius + terms + 2)
        throw std::invalid_argument("construct_harmonic: need R >= r + K + 2 so every operator "
                                    "application stays resolvable");

    const int branches = group.num_generators();
    const int capacity = ball_radius + 2;

    // h1 = 2 on the branch of the first generator, 1 elsewhere, 0 on B_r.
    std::vector<double> branch_values(branches, 1.0);
    branch_values[0] = 2.0;
    const RadialFunction h1 =
        make_ends_step(branches, removal_radius, branch_values, removal_radius + 2);

    HarmonicConstruction out;
    out.step = radial_markov_minus_identity(h1, capacity); // h1*(P-I), finitely supported
    if (!out.step.has_zero_tail())
        throw std::logic_error("construct_harmonic: h1*(P-I) must be finitely supported");

    // Support scan: exactly the removed-adjacent shell(s) r and r+1
    // (for r = 0 the shell 0 is the identity itself).
    {
        const auto lengths = radial_support_lengths(out.step, 0.0);
        out.report.step_support_ok =
            lengths.size() == 2 && lengths[0] == removal_radius && lengths[1] == removal_radius + 1;
    }

    const NormEstimate rho = operator_norm_estimate(group, ball_radius, p, norm_iters);

    // h2 = F(h1*(P-I)) with F = -(sum_{j<=K} P^j); then h = h1 - h2 satisfies
    // h*(P-I) = (h1*(P-I))*P^{K+1}, which the Neumann tail bound controls.
    // (Feeding h1*(I-P) into F instead flips the sign and leaves
    // h*(P-I) = 2 h1*(P-I), which no truncation order fixes.)
    RadialFunction term = out.step;
    RadialFunction acc = out.step; // sum_{j=0}^{K} (h1*(P-I)) * P^j
    for (int j = 1; j <= terms; ++j) {
        term = radial_markov_apply(term, capacity);
        acc = radial_add(acc, term, 1.0);
    }
    out.h2 = radial_add(make_radial_zero(branches, acc.max_len), acc, -1.0);
    out.h = radial_add(h1, out.h2, -1.0); // = h1 + acc
    out.residual = radial_markov_minus_identity(out.h, capacity + 1);

    out.report.p = p;
    out.report.ball_radius = ball_radius;
    out.report.removal_radius = removal_radius;
    out.report.terms = terms;
    out.report.rho = rho.value;
    out.report.rhs_norm = radial_lp_norm(out.step, p); // ||h1*(I-P)||_p = ||h1*(P-I)||_p
    out.report.tail_bound = out.report.rhs_norm * std::pow(rho.value, terms + 1) / (1.0 - rho.value);
    out.report.residual_norm = radial_lp_norm(out.residual, p);
    out.report.h2_norm = radial_lp_norm(out.h2, p);
    const auto [sup, inf] = radial_range(out.h);
    out.report.h_sup = sup;
    out.report.h_inf = inf;
    return out;
}

DegreeOfFreedomCheck degree_of_freedom_check(const HarmonicConstruction& hc, const Group& group,
                                             double p, const SolverOptions& opts, int dense_radius,
                                             std::size_t budget) {
    auto ball = build_ball(group, dense_radius, budget);
    const GraphFunction f = materialize(hc.h, group, ball);
    DegreeOfFreedomCheck check;
    Decomposition d = royden_decompose(f, p, opts);
    check.solve = d.report;
    double lo = d.h.values[0], hi = d.h.values[0];
    for (double v : d.h.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    check.spread = hi - lo;
    check.nonconstant_harmonic_part = check.spread >= 0.1;
    return check;
}

} // namespace pharmonic
