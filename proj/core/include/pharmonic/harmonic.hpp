#pragma once

#include "pharmonic/markov.hpp"
#include "pharmonic/solver.hpp"

namespace pharmonic {

struct HarmonicReport {
    double p = 2.0;
    int ball_radius = 0;
    int removal_radius = 0;
    int terms = 0;          // K, truncation order of the Neumann series
    double rho = 0.0;       // norm estimate used for the tail bound
    double rhs_norm = 0.0;  // ||h1*(I-P)||_p
    double tail_bound = 0.0;
    double residual_norm = 0.0;  // ||h*(P-I)||_p, exact over the full support
    double h2_norm = 0.0;        // ||h2||_p < inf, the h2-in-L^p witness
    double h_sup = 0.0;
    double h_inf = 0.0;
    bool step_support_ok = false; // supp(h1*(P-I)) == shells {r, r+1} exactly
};

/// The ends-based construction on the free group: h1 takes the value 2 on the
/// branch of the first generator, 1 on the remaining branches, 0 on the
/// removed ball of radius r; h2 is the truncated Neumann image of
/// h1*(I-P); h = h1 - h2 is harmonic up to the reported residual, nonconstant
/// and of finite Dirichlet p-norm. All functions are branch-radial, so the
/// computation is exact at radii where no dense ball could exist.
struct HarmonicConstruction {
    RadialFunction h;
    RadialFunction h2;
    RadialFunction step;      // h1*(P-I), finitely supported
    RadialFunction residual;  // h*(P-I)
    HarmonicReport report;
};

/// Preconditions: Free(k) group, R >= r + K + 2. Other families are
/// rejected (the Neumann series needs ||P|| < 1).
HarmonicConstruction construct_harmonic(const Group& group, double p, int ball_radius,
                                        int removal_radius, int terms, int norm_iters = 1000);

struct DegreeOfFreedomCheck {
    bool nonconstant_harmonic_part = false;
    double spread = 0.0; // sup - inf of the p-harmonic part of the decomposition
    SolveReport solve;
};

/// Feeds the constructed h, materialized on a small dense ball, through
/// royden_decompose and checks that the p-harmonic part stays nonconstant.
DegreeOfFreedomCheck degree_of_freedom_check(const HarmonicConstruction& hc, const Group& group,
                                             double p, const SolverOptions& opts = {},
                                             int dense_radius = 6,
                                             std::size_t budget = kDefaultVertexBudget);

} // namespace pharmonic
