#pragma once

// Shape diagnostics for L_n: divided differences of f_mu, the closed-form
// first derivative of L_n f and second derivative of L_n f / ln_mu, the
// BV_mu norm (variation of f_mu plus |f(0)|) with its contraction check,
// and the monotone-in-n ordering L_n f >= L_{n+1} f >= f for increasing
// convex f_mu (mirrored for the decreasing concave case).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "logbern/analysis.hpp"
#include "logbern/errors.hpp"
#include "logbern/functions.hpp"
#include "logbern/operators.hpp"
#include "logbern/warp.hpp"

namespace logbern {

struct DividedDifferences {
    int order = 1;
    std::vector<double> values; // length n (order 1) or n-1 (order 2)
};

/// Delta_1 f_mu(k/n) = n [f_mu((k+1)/n) - f_mu(k/n)],
/// Delta_2 f_mu(k/n) = n^2 [f_mu((k+2)/n) - 2 f_mu((k+1)/n) + f_mu(k/n)].
inline DividedDifferences divided_diff(const AnalyticFunction& f, MuParam mu, int n, int order) {
    if (order != 1 && order != 2)
        throw ParameterError("divided_diff: order must be 1 or 2");
    if (n < order)
        throw ParameterError("divided_diff: need n >= order");
    const TransformedFunction fmu{f, mu};
    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        nodes[static_cast<std::size_t>(k)] = fmu(static_cast<double>(k) / n);

    DividedDifferences dd;
    dd.order = order;
    if (order == 1) {
        dd.values.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            dd.values[static_cast<std::size_t>(k)] =
                n * (nodes[static_cast<std::size_t>(k) + 1] - nodes[static_cast<std::size_t>(k)]);
    } else {
        dd.values.resize(static_cast<std::size_t>(n) - 1);
        const double n2 = static_cast<double>(n) * n;
        for (int k = 0; k + 2 <= n; ++k)
            dd.values[static_cast<std::size_t>(k)] =
                n2 * (nodes[static_cast<std::size_t>(k) + 2] -
                      2.0 * nodes[static_cast<std::size_t>(k) + 1] +
                      nodes[static_cast<std::size_t>(k)]);
    }
    return dd;
}

namespace detail {

// sum_k Delta p_{m,k}(a_n(x)) for a divided-difference table over degree m.
inline double difference_sum(std::span<const double> deltas, std::span<const double> log_row,
                             double ax) {
    const auto w = basis_weights(log_row, ax);
    CompensatedSum acc;
    for (std::size_t k = 0; k < deltas.size(); ++k)
        acc.add(deltas[k] * w[k]);
    return acc.value();
}

} // namespace detail

/// L_n'(f,x) = B_n(f_mu, a_n(x))/(1+mu+x)
///           + ln_mu(x) a_n'(x) sum_k Delta_1 f_mu(k/n) p_{n-1,k}(a_n(x)).
inline double lnf_derivative(const AnalyticFunction& f, MuParam mu, int n, double x) {
    if (n < 1)
        throw ParameterError("lnf_derivative: n must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("lnf_derivative: x outside [0,1]");
    const WarpContext ctx(mu, n);
    const double ax = warp(ctx, x);
    const LogOperator op(f, mu, n);
    const auto d1 = divided_diff(f, mu, n, 1);
    const double s1 = detail::difference_sum(d1.values, log_binomial_row(n - 1), ax);
    return op.ratio(x) / (1.0 + mu.value + x) + ln_mu(mu, x) * warp_d1(ctx, x) * s1;
}

/// (L_n f / ln_mu)''(x) = a_n''(x) sum Delta_1 p_{n-1,k}(a_n(x))
///   + ((n-1)/n) a_n'(x)^2 sum Delta_2 p_{n-2,k}(a_n(x)).
inline double second_derivative_ratio(const AnalyticFunction& f, MuParam mu, int n, double x) {
    if (n < 1)
        throw ParameterError("second_derivative_ratio: n must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("second_derivative_ratio: x outside [0,1]");
    const WarpContext ctx(mu, n);
    const double ax = warp(ctx, x);
    const auto d1 = divided_diff(f, mu, n, 1);
    double out = warp_d2(ctx, x) * detail::difference_sum(d1.values, log_binomial_row(n - 1), ax);
    if (n >= 2) {
        const auto d2 = divided_diff(f, mu, n, 2);
        const double ap = warp_d1(ctx, x);
        out += (static_cast<double>(n - 1) / n) * ap * ap *
               detail::difference_sum(d2.values, log_binomial_row(n - 2), ax);
    }
    return out;
}

struct BVNorm {
    double variation = 0.0; // of f_mu over the partition
    double f0 = 0.0;
    double norm = 0.0; // variation + |f0|
};

/// Partition variation of f/ln_mu plus |f(0)|. A lower bound of the true
/// variation; exact for piecewise-monotone f_mu once the partition contains
/// the turning points.
inline BVNorm bv_norm(const std::function<double(double)>& f, MuParam mu,
                      std::span<const double> partition) {
    if (partition.size() < 2 || partition.front() != 0.0 || partition.back() != 1.0)
        throw DataError("bv_norm: partition must run from 0 to 1");
    for (std::size_t i = 1; i < partition.size(); ++i)
        if (!(partition[i] > partition[i - 1]))
            throw DataError("bv_norm: partition must be strictly increasing");
    CompensatedSum var;
    double prev = f(partition[0]) / ln_mu(mu, partition[0]);
    for (std::size_t i = 1; i < partition.size(); ++i) {
        const double cur = f(partition[i]) / ln_mu(mu, partition[i]);
        var.add(std::abs(cur - prev));
        prev = cur;
    }
    BVNorm out;
    out.variation = var.value();
    out.f0 = f(0.0);
    out.norm = out.variation + std::abs(out.f0);
    return out;
}

inline BVNorm bv_norm(const AnalyticFunction& f, MuParam mu, std::span<const double> partition) {
    return bv_norm(f.eval, mu, partition);
}

namespace detail {

// Roots of g on (0,1) located as sign changes over a scan grid, refined by
// bisection.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& g,
                                             int scan_points) {
    std::vector<double> roots;
    double xp = 0.0;
    double gp = g(xp);
    for (int i = 1; i < scan_points; ++i) {
        const double x = static_cast<double>(i) / (scan_points - 1);
        const double gx = g(x);
        if ((gp < 0.0 && gx > 0.0) || (gp > 0.0 && gx < 0.0)) {
            double lo = xp, hi = x, glo = gp;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((glo < 0.0) == (gm < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        xp = x;
        gp = gx;
    }
    return roots;
}

inline std::vector<double> refined_partition(std::span<const double> extra, int uniform_points) {
    std::vector<double> p = uniform_nodes(uniform_points);
    p.insert(p.end(), extra.begin(), extra.end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            p.end());
    if (p.front() != 0.0)
        p.insert(p.begin(), 0.0);
    if (p.back() != 1.0)
        p.push_back(1.0);
    return p;
}

} // namespace detail

struct BVContractionReport {
    double lhs = 0.0; // ||L_n f||_{BV_mu}
    double rhs = 0.0; // ||f||_{BV_mu}
    bool holds = false;
    std::size_t partition_size = 0;
};

/// ||L_n f||_{BV_mu} <= ||f||_{BV_mu} + 1e-9 on a shared fine partition that
/// includes the numerically located turning points of both sides.
inline BVContractionReport bv_contraction_check(const AnalyticFunction& f, MuParam mu, int n,
                                                int uniform_points = 2001) {
    const LogOperator op(f, mu, n);
    const TransformedFunction fmu{f, mu};

    // Turning points: (L_n f / ln_mu)' has the sign of sum Delta_1 p_{n-1,k};
    // f_mu's come from its own derivative.
    const auto d1 = divided_diff(f, mu, n, 1);
    const auto row = log_binomial_row(n - 1);
    const WarpContext ctx(mu, n);
    const auto S = [&](double x) {
        return detail::difference_sum(d1.values, row, warp(ctx, x));
    };
    std::vector<double> extra = detail::sign_change_roots(S, 513);
    const auto fmu_slope = [&fmu](double x) { return fmu.deriv1(x, true); };
    const auto fr = detail::sign_change_roots(fmu_slope, 513);
    extra.insert(extra.end(), fr.begin(), fr.end());

    const auto partition = detail::refined_partition(extra, uniform_points);
    BVContractionReport rep;
    rep.partition_size = partition.size();
    rep.lhs = bv_norm([&op](double x) { return op(x); }, mu, partition).norm;
    rep.rhs = bv_norm(f, mu, partition).norm;
    rep.holds = rep.lhs <= rep.rhs + 1e-9;
    return rep;
}

enum class ShapeClass { IncreasingConvex, DecreasingConcave };

struct MonotoneChainReport {
    bool holds = false;
    double worst_step_margin = 0.0; // min over (n,x) of +-(L_n - L_{n+1})
    double worst_f_margin = 0.0;    // min over (n,x) of +-(L_{n+1} - f)
};

/// L_n f >= L_{n+1} f >= f - 1e-10 on interior grid points for increasing
/// convex f_mu; reversed for decreasing concave f_mu. The asserted shape is
/// verified on the grid before use.
inline MonotoneChainReport monotone_in_n_check(const AnalyticFunction& f, MuParam mu,
                                               std::span<const int> n_list,
                                               std::span<const double> grid, ShapeClass shape) {
    const TransformedFunction fmu{f, mu};
    const auto check = uniform_nodes(201);
    const double sgn = shape == ShapeClass::IncreasingConvex ? 1.0 : -1.0;
    std::vector<double> v(check.size());
    for (std::size_t i = 0; i < check.size(); ++i)
        v[i] = sgn * fmu(check[i]);
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - 1e-12)
            throw ParameterError("monotone_in_n_check: f_mu fails the asserted monotonicity");
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double second = v[i + 1] - 2.0 * v[i] + v[i - 1];
        if (second < -1e-10)
            throw ParameterError("monotone_in_n_check: f_mu fails the asserted convexity");
    }

    MonotoneChainReport rep;
    rep.worst_step_margin = std::numeric_limits<double>::infinity();
    rep.worst_f_margin = std::numeric_limits<double>::infinity();
    for (int n : n_list) {
        const LogOperator a(f, mu, n), b(f, mu, n + 1);
        for (double x : grid) {
            if (x <= 0.0 || x >= 1.0)
                continue;
            const double la = a(x), lb = b(x), fx = f.eval(x);
            rep.worst_step_margin = std::min(rep.worst_step_margin, sgn * (la - lb));
            rep.worst_f_margin = std::min(rep.worst_f_margin, sgn * (lb - fx));
        }
    }
    rep.holds = rep.worst_step_margin >= -1e-10 && rep.worst_f_margin >= -1e-10;
    return rep;
}

} // namespace logbern
