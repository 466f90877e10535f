#include "pharmonic/free_radial.hpp"

#include <cmath>
#include <stdexcept>

namespace pharmonic {

namespace {

void check_compatible(const RadialFunction& a, const RadialFunction& b) {
    if (a.branches != b.branches) throw std::invalid_argument("radial: branch count mismatch");
}

} // namespace

bool RadialFunction::has_zero_tail() const {
    for (double t : tail)
        if (t != 0.0) return false;
    return true;
}

RadialFunction make_radial_zero(int branches, int max_len) {
    RadialFunction f;
    f.branches = branches;
    f.max_len = max_len;
    f.shells.assign(static_cast<std::size_t>(branches) * max_len, 0.0);
    f.tail.assign(branches, 0.0);
    return f;
}

RadialFunction make_ends_step(int branches, int removal_radius, const std::vector<double>& branch_values,
                              int max_len) {
    if (static_cast<int>(branch_values.size()) != branches)
        throw std::invalid_argument("make_ends_step: branch value per generator required");
    if (max_len < removal_radius + 1) throw std::invalid_argument("make_ends_step: max_len too small");
    RadialFunction f = make_radial_zero(branches, max_len);
    for (int b = 0; b < branches; ++b) {
        for (int n = removal_radius + 1; n <= max_len; ++n)
            f.shells[static_cast<std::size_t>(b) * max_len + (n - 1)] = branch_values[b];
        f.tail[b] = branch_values[b];
    }
    return f;
}

RadialFunction radial_markov_apply(const RadialFunction& f, int max_capacity) {
    const int S = f.branches;
    const double q = static_cast<double>(S - 1);
    const int out_len = f.max_len + 1;
    if (out_len > max_capacity)
        throw std::invalid_argument("radial_markov_apply: capacity exceeded "
                                    "(each application spreads support by one shell)");
    RadialFunction out = make_radial_zero(S, out_len);
    out.tail = f.tail; // branch-constant far field is P-invariant
    double sum1 = 0.0;
    for (int b = 0; b < S; ++b) sum1 += f.at(b, 1);
    out.origin = sum1 / S;
    for (int b = 0; b < S; ++b) {
        out.shells[static_cast<std::size_t>(b) * out_len] = (f.origin + q * f.at(b, 2)) / S;
        for (int n = 2; n <= out_len; ++n)
            out.shells[static_cast<std::size_t>(b) * out_len + (n - 1)] =
                (f.at(b, n - 1) + q * f.at(b, n + 1)) / S;
    }
    return out;
}

RadialFunction radial_markov_minus_identity(const RadialFunction& f, int max_capacity) {
    RadialFunction pf = radial_markov_apply(f, max_capacity);
    for (int b = 0; b < f.branches; ++b) {
        for (int n = 1; n <= pf.max_len; ++n)
            pf.shells[static_cast<std::size_t>(b) * pf.max_len + (n - 1)] -= f.at(b, n);
        pf.tail[b] -= f.tail[b]; // exactly zero
    }
    pf.origin -= f.origin;
    return pf;
}

RadialFunction radial_add(const RadialFunction& a, const RadialFunction& b, double bscale) {
    check_compatible(a, b);
    const int len = std::max(a.max_len, b.max_len);
    RadialFunction out = make_radial_zero(a.branches, len);
    out.origin = a.origin + bscale * b.origin;
    for (int br = 0; br < a.branches; ++br) {
        out.tail[br] = a.tail[br] + bscale * b.tail[br];
        for (int n = 1; n <= len; ++n)
            out.shells[static_cast<std::size_t>(br) * len + (n - 1)] = a.at(br, n) + bscale * b.at(br, n);
    }
    return out;
}

double radial_lp_norm(const RadialFunction& f, double p) {
    if (!f.has_zero_tail())
        throw std::invalid_argument("radial_lp_norm: function has a nonzero far field, norm is infinite");
    const double q = static_cast<double>(f.branches - 1);
    KahanSum sum;
    sum.add(std::pow(std::abs(f.origin), p));
    for (int b = 0; b < f.branches; ++b) {
        double weight = 1.0; // number of words with this first letter and length n: q^{n-1}
        for (int n = 1; n <= f.max_len; ++n) {
            const double v = f.at(b, n);
            if (v != 0.0) sum.add(weight * std::pow(std::abs(v), p));
            weight *= q;
        }
    }
    return std::pow(sum.value(), 1.0 / p);
}

std::pair<double, double> radial_range(const RadialFunction& f) {
    double lo = f.origin, hi = f.origin;
    for (int b = 0; b < f.branches; ++b) {
        for (int n = 1; n <= f.max_len; ++n) {
            lo = std::min(lo, f.at(b, n));
            hi = std::max(hi, f.at(b, n));
        }
        lo = std::min(lo, f.tail[b]);
        hi = std::max(hi, f.tail[b]);
    }
    return {hi, lo};
}

std::vector<int> radial_support_lengths(const RadialFunction& f, double tol) {
    std::vector<int> lengths;
    if (std::abs(f.origin) > tol) lengths.push_back(0);
    for (int n = 1; n <= f.max_len; ++n) {
        for (int b = 0; b < f.branches; ++b) {
            if (std::abs(f.at(b, n)) > tol) {
                lengths.push_back(n);
                break;
            }
        }
    }
    return lengths;
}

GraphFunction materialize(const RadialFunction& f, const Group& group,
                          std::shared_ptr<const CayleyBall> ball) {
    if (group.family() != GroupFamily::Free)
        throw std::invalid_argument("materialize: branch-radial functions live on free groups");
    GraphFunction out;
    out.values.resize(ball->size());
    for (std::size_t v = 0; v < ball->size(); ++v) {
        const int len = ball->dist[v];
        if (len == 0) {
            out.values[v] = f.origin;
        } else {
            const int branch = static_cast<int>(ball->vertices[v].bytes[0]);
            out.values[v] = f.at(branch, len);
        }
    }
    out.ball = std::move(ball);
    return out;
}

double free_growth_norm_estimate(int k, double p, int iters, double* last_rel_change) {
    if (k < 2) throw std::invalid_argument("free_growth_norm_estimate: k >= 2");
    if (!(p >= 1.0)) throw std::invalid_argument("free_growth_norm_estimate: p >= 1");
    if (iters < 1) throw std::invalid_argument("free_growth_norm_estimate: iters >= 1");
    const double S = 2.0 * k, q = 2.0 * k - 1.0;
    // Pre-weighted coordinates y_n = w_n^{1/p} v_n make the weighted l^p norm
    // a plain l^p norm and keep every entry O(1).
    const double cS = std::pow(S, 1.0 / p);
    const double cq_in = std::pow(q, 1.0 / p);        // toward the origin
    const double cq_out = q * std::pow(q, -1.0 / p);  // away from the origin
    std::vector<double> y(static_cast<std::size_t>(iters) + 3, 0.0), ny(y.size(), 0.0);
    y[0] = 1.0;
    double log_norm = 0.0, best = 0.0, prev_root = 0.0;
    for (int t = 1; t <= iters; ++t) {
        ny[0] = y[1] / cS;
        ny[1] = (cS * y[0] + cq_out * y[2]) / S;
        for (int n = 2; n <= t + 1; ++n) ny[n] = (cq_in * y[n - 1] + cq_out * y[n + 1]) / S;
        std::swap(y, ny);
        KahanSum sum;
        for (int n = 0; n <= t + 1; ++n) sum.add(std::pow(std::abs(y[n]), p));
        const double norm = std::pow(sum.value(), 1.0 / p);
        log_norm += std::log(norm);
        const double root = std::exp(log_norm / t);
        best = std::max(best, root);
        if (last_rel_change) *last_rel_change = std::abs(root - prev_root) / std::max(root, 1e-300);
        prev_root = root;
        const double inv = 1.0 / norm;
        for (int n = 0; n <= t + 1; ++n) y[n] *= inv;
    }
    return best;
}

} // namespace pharmonic
