#include "pharmonic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pharmonic {

namespace {

// In-ball undirected edge list; the ordered double sum is 2x the edge sum.
struct EdgeList {
    std::vector<std::int32_t> a, b;
};

EdgeList in_ball_edges(const CayleyBall& ball) {
    EdgeList e;
    for (std::size_t v = 0; v < ball.size(); ++v) {
        for (int s = 0; s < ball.degree; ++s) {
            const std::int32_t j = ball.neighbor(static_cast<std::int32_t>(v), s);
            if (j > static_cast<std::int32_t>(v)) { // each unordered edge once
                e.a.push_back(static_cast<std::int32_t>(v));
                e.b.push_back(j);
            }
        }
    }
    return e;
}

// phi(t) = |t|^{p-2} t, optionally smoothed to t (t^2+eps^2)^{(p-2)/2}.
inline double phi(double t, double p, double eps) {
    if (eps > 0.0) return t * std::pow(t * t + eps * eps, (p - 2.0) / 2.0);
    return signed_power(t, p - 1.0);
}

inline double integrand(double t, double p, double eps) {
    if (eps > 0.0) return std::pow(t * t + eps * eps, p / 2.0);
    return std::pow(std::abs(t), p);
}

double edge_energy(const EdgeList& e, const std::vector<double>& x, double p, double eps) {
    KahanSum sum;
    for (std::size_t i = 0; i < e.a.size(); ++i) sum.add(integrand(x[e.b[i]] - x[e.a[i]], p, eps));
    return 2.0 * sum.value();
}

// grad[v] = dE/dx_v over free vertices; clamped entries forced to zero.
void edge_gradient(const EdgeList& e, const std::vector<double>& x, double p, double eps,
                   const std::vector<std::uint8_t>& free_mask, std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < e.a.size(); ++i) {
        const double g = 2.0 * p * phi(x[e.b[i]] - x[e.a[i]], p, eps);
        grad[e.a[i]] -= g;
        grad[e.b[i]] += g;
    }
    for (std::size_t v = 0; v < grad.size(); ++v)
        if (!free_mask[v]) grad[v] = 0.0;
}

// Minimizes the restriction of t -> E(x + t d) by Newton-bisection on the
// derivative. Works entirely with per-edge differences, so it has no
// energy-rounding floor; the 1-D function is convex, hence the derivative is
// nondecreasing and a sign-change bracket always pins the minimizer.
double line_minimize(const std::vector<double>& u, const std::vector<double>& du, double p,
                     double eps, double t_init) {
    const auto dphi = [&](double t) { // (1/2p) phi'(t)
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (du[i] != 0.0) acc += du[i] * phi(u[i] + t * du[i], p, eps);
        return acc;
    };
    const auto d2phi = [&](double t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (du[i] == 0.0) continue;
            const double w = u[i] + t * du[i];
            double curv;
            if (eps > 0.0)
                curv = std::pow(w * w + eps * eps, (p - 2.0) / 2.0) *
                       (1.0 + (p - 2.0) * w * w / (w * w + eps * eps));
            else if (p == 2.0)
                curv = 1.0;
            else
                curv = (w == 0.0) ? 0.0 : (p - 1.0) * std::pow(std::abs(w), p - 2.0);
            acc += du[i] * du[i] * curv;
        }
        return acc;
    };

    if (dphi(0.0) >= 0.0) return 0.0; // not a descent direction
    double hi = t_init > 0.0 ? t_init : 1.0;
    int grow = 0;
    while (dphi(hi) < 0.0 && grow++ < 200) hi *= 2.0;
    double lo = 0.0, t = std::min(hi, t_init > 0.0 ? t_init : hi / 2.0);
    for (int it = 0; it < 80; ++it) {
        const double d1 = dphi(t);
        if (d1 < 0.0)
            lo = t;
        else
            hi = t;
        const double d2 = d2phi(t);
        double next = (d2 > 0.0) ? t - d1 / d2 : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-14 * std::max(1.0, t)) return next;
        t = next;
    }
    return t;
}

// Polak-Ribiere+ conjugate gradient with the derivative line search above.
// Restarts to steepest descent whenever conjugacy degrades. At p = 2 this is
// linear CG and reaches machine-precision gradients in O(n) iterations.
SolveReport minimize(const CayleyBall& ball, std::vector<double>& x,
                     const std::vector<std::uint8_t>& free_mask, double p,
                     const SolverOptions& opts) {
    if (!(p > 1.0)) throw std::invalid_argument("solver: p must be > 1");
    if (opts.max_iters < 1 || !(opts.grad_tol > 0.0) || opts.smoothing_eps < 0.0)
        throw std::invalid_argument("solver: invalid options");
    const double eps = (p < 2.0) ? opts.smoothing_eps : 0.0;
    const EdgeList edges = in_ball_edges(ball);
    const std::size_t n_edges = edges.a.size();

    SolveReport report;
    std::vector<double> grad(x.size()), prev_grad(x.size()), dir(x.size(), 0.0);
    std::vector<double> u(n_edges), du(n_edges);
    double prev_gsq = 0.0, t_prev = 0.0;

    for (int it = 0; it < opts.max_iters; ++it) {
        edge_gradient(edges, x, p, eps, free_mask, grad);
        double gsup = 0.0, gsq = 0.0, gy = 0.0;
        for (std::size_t v = 0; v < grad.size(); ++v) {
            gsup = std::max(gsup, std::abs(grad[v]));
            gsq += grad[v] * grad[v];
            gy += grad[v] * (grad[v] - prev_grad[v]);
        }
        report.iterations = it;
        report.grad_sup = gsup;
        if (gsup <= opts.grad_tol) {
            report.converged = true;
            break;
        }

        double beta = (it == 0 || prev_gsq == 0.0) ? 0.0 : std::max(0.0, gy / prev_gsq);
        if (it % 50 == 49) beta = 0.0; // periodic restart
        double dg = 0.0;
        for (std::size_t v = 0; v < x.size(); ++v) {
            dir[v] = -grad[v] + beta * dir[v];
            dg += dir[v] * grad[v];
        }
        if (dg >= 0.0) { // conjugacy lost: fall back to steepest descent
            for (std::size_t v = 0; v < x.size(); ++v) dir[v] = -grad[v];
        }

        for (std::size_t i = 0; i < n_edges; ++i) {
            u[i] = x[edges.b[i]] - x[edges.a[i]];
            du[i] = dir[edges.b[i]] - dir[edges.a[i]];
        }
        const double t = line_minimize(u, du, p, eps, t_prev);
        if (t <= 0.0) break; // no further progress representable
        for (std::size_t v = 0; v < x.size(); ++v) x[v] += t * dir[v];
        t_prev = t;
        prev_grad = grad;
        prev_gsq = gsq;
    }
    report.final_energy = edge_energy(edges, x, p, 0.0);
    return report;
}

void fill_interior_residual(const GraphFunction& f, double p, SolveReport& report) {
    double worst = 0.0;
    for (std::int32_t v : f.ball->interior) worst = std::max(worst, std::abs(p_laplacian(f, p, v)));
    report.max_interior_residual = worst;
}

} // namespace

double dirichlet_energy(const GraphFunction& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("dirichlet_energy: p must be >= 1");
    const EdgeList edges = in_ball_edges(*v.ball);
    KahanSum sum;
    for (std::size_t i = 0; i < edges.a.size(); ++i)
        sum.add(std::pow(std::abs(v.values[edges.b[i]] - v.values[edges.a[i]]), p));
    return 2.0 * sum.value();
}

std::pair<GraphFunction, SolveReport> solve_dirichlet(std::shared_ptr<const CayleyBall> ball,
                                                      const std::map<std::int32_t, double>& boundary_values,
                                                      double p, const SolverOptions& opts) {
    if (ball->interior.empty()) throw std::invalid_argument("solve_dirichlet: ball has empty interior");
    for (std::int32_t v : ball->boundary)
        if (boundary_values.find(v) == boundary_values.end())
            throw std::invalid_argument("solve_dirichlet: boundary vertex " + std::to_string(v) +
                                        " has no prescribed value");

    std::vector<std::uint8_t> free_mask(ball->size(), 0);
    for (std::int32_t v : ball->interior) free_mask[v] = 1;

    // Interior start: boundary mean, or seeded uniform values for uniqueness runs.
    double mean = 0.0;
    for (auto& [v, val] : boundary_values) mean += val;
    mean /= static_cast<double>(boundary_values.size());

    GraphFunction f;
    f.ball = ball;
    f.values.assign(ball->size(), mean);
    if (opts.seed != 0) {
        Rng rng(opts.seed);
        for (std::int32_t v : ball->interior) f.values[v] = rng.uniform(-1.0, 1.0);
    }
    for (auto& [v, val] : boundary_values) f.values[v] = val;

    SolveReport report = minimize(*ball, f.values, free_mask, p, opts);
    fill_interior_residual(f, p, report);
    return {std::move(f), report};
}

Decomposition royden_decompose(const GraphFunction& f, double p, const SolverOptions& opts) {
    if (f.ball->radius < 2) throw std::invalid_argument("royden_decompose: ball radius must be >= 2");
    if (f.ball->interior.empty()) throw std::invalid_argument("royden_decompose: empty interior");

    // Minimizing ||f - v||-energy over v vanishing on the boundary is the
    // Dirichlet problem for h = f - v with boundary data f|_boundary.
    std::vector<std::uint8_t> free_mask(f.ball->size(), 0);
    for (std::int32_t v : f.ball->interior) free_mask[v] = 1;

    Decomposition d;
    d.h.ball = f.ball;
    d.h.values = f.values; // v = 0 start
    if (opts.seed != 0) {
        Rng rng(opts.seed);
        for (std::int32_t v : f.ball->interior) d.h.values[v] = f.values[v] - rng.uniform(-1.0, 1.0);
    }
    d.report = minimize(*f.ball, d.h.values, free_mask, p, opts);
    fill_interior_residual(d.h, p, d.report);

    d.u.ball = f.ball;
    d.u.values.resize(f.ball->size());
    for (std::size_t v = 0; v < f.ball->size(); ++v) d.u.values[v] = f.values[v] - d.h.values[v];
    d.u.tail = Tail::Zero; // vanishes on the boundary and, conceptually, outside
    return d;
}

UniquenessCheck decomposition_unique_up_to_constant(const GraphFunction& f, double p,
                                                    const SolverOptions& opts,
                                                    const std::vector<std::uint64_t>& seeds,
                                                    double tol) {
    if (seeds.size() < 2) throw std::invalid_argument("need at least 2 seeds");
    std::vector<GraphFunction> hs;
    for (std::uint64_t s : seeds) {
        SolverOptions o = opts;
        o.seed = s;
        hs.push_back(royden_decompose(f, p, o).h);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t v = 0; v < hs[i].values.size(); ++v) {
                const double diff = hs[i].values[v] - hs[j].values[v];
                lo = std::min(lo, diff);
                hi = std::max(hi, diff);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    return {worst <= tol, worst};
}

bool reduced_class_is_trivial(const GraphFunction& f, double p, const SolverOptions& opts, double tol) {
    const GraphFunction h = royden_decompose(f, p, opts).h;
    const auto [lo, hi] = std::minmax_element(h.values.begin(), h.values.end());
    return (*hi - *lo) <= tol;
}

} // namespace pharmonic
