#pragma once

// The shifted logarithm ln_mu(x) = ln(1+mu+x) and the node warp
//
//     a_n(x) = ln(1 + x*eps_n) / ln(1 + eps_n),   eps_n = 1/(n(1+mu)),
//
// an increasing concave map of [0,1] onto itself that dominates the identity
// and converges to it uniformly. gamma_n = max (a_n - x) drives the
// quantitative error bound; n*gamma_n -> 1/(8(1+mu)).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "logbern/errors.hpp"

namespace logbern {

/// Strictly positive shift parameter of the logarithm.
struct MuParam {
    double value;
    explicit MuParam(double v) : value(v) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParameterError("MuParam: mu must be strictly positive and finite, got " +
                                 std::to_string(v));
    }
};

inline double ln_mu(MuParam mu, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("ln_mu: x outside [0,1]");
    return std::log(1.0 + mu.value + x);
}

inline double ln_mu_d1(MuParam mu, double x) { return 1.0 / (1.0 + mu.value + x); }

inline double ln_mu_d2(MuParam mu, double x) {
    const double d = 1.0 + mu.value + x;
    return -1.0 / (d * d);
}

/// (mu, n) pair with the derived eps_n = 1/(n(1+mu)).
struct WarpContext {
    MuParam mu;
    int n;
    double eps;

    WarpContext(MuParam mu_, int n_) : mu(mu_), n(n_), eps(1.0 / (n_ * (1.0 + mu_.value))) {
        if (n < 1)
            throw ParameterError("WarpContext: n must be >= 1");
    }
};

/// a_n(x). Endpoints are returned exactly: downstream operators interpolate
/// there and must see exact basis degeneracy.
inline double warp(const WarpContext& ctx, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("warp: x outside [0,1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    return std::log1p(x * ctx.eps) / std::log1p(ctx.eps);
}

inline double warp_d1(const WarpContext& ctx, double x) {
    return ctx.eps / ((1.0 + x * ctx.eps) * std::log1p(ctx.eps));
}

inline double warp_d2(const WarpContext& ctx, double x) {
    const double d = 1.0 + x * ctx.eps;
    return -ctx.eps * ctx.eps / (d * d * std::log1p(ctx.eps));
}

struct GammaResult {
    double x_star; // maximizer of a_n(x) - x
    double gamma;  // the maximum
};

/// Locate gamma_n = max_{[0,1]} (a_n(x) - x) by ternary search on the concave
/// gap, refined to an interval of 1e-13, with a coarse grid scan as fallback.
inline GammaResult gamma_n(const WarpContext& ctx) {
    const auto gap = [&ctx](double x) { return warp(ctx, x) - x; };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (gap(m1) < gap(m2))
            lo = m1;
        else
            hi = m2;
    }
    GammaResult r{0.5 * (lo + hi), 0.0};
    r.gamma = gap(r.x_star);
    // Fallback scan; on a concave gap the ternary result already dominates.
    for (int i = 1; i < 128; ++i) {
        const double x = static_cast<double>(i) / 128.0;
        const double v = gap(x);
        if (v > r.gamma) {
            r.gamma = v;
            r.x_star = x;
        }
    }
    return r;
}

/// Per-n summary of how the warp gap tracks its first-order asymptotics.
struct WarpGapReport {
    struct Row {
        int n;
        double max_abs_deviation; // max_x |n(a_n(x)-x) - (x-x^2)/(2(1+mu))|
        double n_gamma;           // n * gamma_n
        double sqrt_n_gamma;      // sqrt(n) * gamma_n
    };
    double mu = 0.0;
    std::vector<Row> rows;
};

inline WarpGapReport warp_gap_asymptotics(MuParam mu, std::span<const int> n_list,
                                          int grid_points = 1001) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw ParameterError("warp_gap_asymptotics: n_list must be increasing");
    WarpGapReport rep;
    rep.mu = mu.value;
    for (int n : n_list) {
        WarpContext ctx(mu, n);
        double worst = 0.0;
        for (int i = 0; i < grid_points; ++i) {
            const double x = static_cast<double>(i) / (grid_points - 1);
            const double limit = (x - x * x) / (2.0 * (1.0 + mu.value));
            worst = std::max(worst, std::abs(n * (warp(ctx, x) - x) - limit));
        }
        const GammaResult g = gamma_n(ctx);
        rep.rows.push_back({n, worst, n * g.gamma, std::sqrt(static_cast<double>(n)) * g.gamma});
    }
    return rep;
}

} // namespace logbern
