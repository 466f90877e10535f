#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pharmonic/function.hpp"

namespace pharmonic {

struct SolverOptions {
    int max_iters = 100'000;
    double grad_tol = 1e-10;       // stop when the gradient sup-norm drops below this
    double smoothing_eps = 1e-9;   // |x|^p -> (x^2+eps^2)^{p/2} for 1 < p < 2
    std::uint64_t seed = 0;        // randomized interior initialization when nonzero
};

struct SolveReport {
    int iterations = 0;
    double final_energy = 0.0;
    double grad_sup = 0.0;
    double max_interior_residual = 0.0; // unsmoothed |Delta_p| over the interior
    bool converged = false;
};

/// Dirichlet energy: sum over ordered in-ball pairs of |f(gs^{-1}) - f(g)|^p
/// (each undirected edge twice). The minimization objective.
double dirichlet_energy(const GraphFunction& v, double p);

/// Minimizes the Dirichlet energy over functions that agree with
/// boundary_values on the ball boundary. Conjugate-gradient descent with an
/// exact line search on the (optionally smoothed) convex objective.
std::pair<GraphFunction, SolveReport> solve_dirichlet(std::shared_ptr<const CayleyBall> ball,
                                                      const std::map<std::int32_t, double>& boundary_values,
                                                      double p, const SolverOptions& opts = {});

struct Decomposition {
    GraphFunction u; // in the closure of finitely supported functions (vanishes on the boundary)
    GraphFunction h; // finite-scale p-harmonic representative, h = f - u
    SolveReport report;
};

/// f = u + h with u supported in the interior and Delta_p h = 0 on the
/// interior up to the reported residual. Computed by minimizing
/// ||f - v||-energy over v vanishing on the boundary.
Decomposition royden_decompose(const GraphFunction& f, double p, const SolverOptions& opts = {});

struct UniquenessCheck {
    bool unique_up_to_constant;
    double max_deviation; // max over pairs of (sup - inf) of h_i - h_j
};

/// Runs royden_decompose once per seed and checks that all harmonic parts
/// agree up to an additive constant within tol.
UniquenessCheck decomposition_unique_up_to_constant(const GraphFunction& f, double p,
                                                    const SolverOptions& opts,
                                                    const std::vector<std::uint64_t>& seeds,
                                                    double tol);

/// True iff the harmonic part of f is constant within tol (finite-scale
/// verdict for membership of [f] in the closure of L^p + constants).
bool reduced_class_is_trivial(const GraphFunction& f, double p, const SolverOptions& opts, double tol);

} // namespace pharmonic
