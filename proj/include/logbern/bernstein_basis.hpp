#pragma once

// Binomial basis weights p_{n,k}(x) = C(n,k) x^k (1-x)^{n-k} and the small
// zoo of quantities built from them: the integral identity over [0,1],
// algebraic moments T_{n,s}, tail sums and the first absolute moment.
//
// Weights are evaluated in log space (lgamma plus k log x + (n-k) log1p(-x))
// so that degrees of a few thousand stay finite; x = 0 and x = 1 degenerate
// to exact Kronecker weights.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "logbern/errors.hpp"
#include "logbern/quadrature.hpp"
#include "logbern/summation.hpp"

namespace logbern {

/// One evaluation point of the binomial basis.
struct BasisPoint {
    int n;
    int k;
    double x;

    BasisPoint(int n_, int k_, double x_) : n(n_), k(k_), x(x_) {
        if (n < 1)
            throw DomainError("BasisPoint: degree must be positive, got n=" + std::to_string(n));
        if (k < 0 || k > n)
            throw DomainError("BasisPoint: index k=" + std::to_string(k) +
                              " outside [0," + std::to_string(n) + "]");
        if (!(x >= 0.0 && x <= 1.0))
            throw DomainError("BasisPoint: x=" + std::to_string(x) + " outside [0,1]");
    }
};

/// Order of an algebraic moment T_{n,s}.
struct MomentOrder {
    int s;
    explicit MomentOrder(int s_) : s(s_) {
        if (s < 0)
            throw DomainError("MomentOrder: order must be nonnegative");
    }
};

/// ln C(n,k) for k = 0..n.
inline std::vector<double> log_binomial_row(int n) {
    if (n < 0)
        throw DomainError("log_binomial_row: negative degree");
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    const double lg = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k)
        row[static_cast<std::size_t>(k)] = lg - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return row;
}

/// All n+1 weights p_{n,k}(x) from a precomputed log-binomial row.
inline std::vector<double> basis_weights(std::span<const double> log_binom_row, double x) {
    const int n = static_cast<int>(log_binom_row.size()) - 1;
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("basis_weights: x outside [0,1]");
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    if (x == 0.0) {
        w.front() = 1.0;
        return w;
    }
    if (x == 1.0) {
        w.back() = 1.0;
        return w;
    }
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    for (int k = 0; k <= n; ++k)
        w[static_cast<std::size_t>(k)] = std::exp(log_binom_row[static_cast<std::size_t>(k)] +
                                                  k * lx + (n - k) * l1x);
    return w;
}

inline std::vector<double> basis_weights(int n, double x) {
    return basis_weights(log_binomial_row(n), x);
}

/// Single weight p_{n,k}(x); accepts n = 0 (constant basis).
inline double basis_weight(int n, int k, double x) {
    if (n < 0 || k < 0 || k > n)
        throw DomainError("basis_weight: invalid (n,k)");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("basis_weight: x outside [0,1]");
    if (x == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (x == 1.0)
        return k == n ? 1.0 : 0.0;
    const double lb = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(lb + k * std::log(x) + (n - k) * std::log1p(-x));
}

inline double binomial_weight(const BasisPoint& p) { return basis_weight(p.n, p.k, p.x); }

/// Numerically integrated \int_0^1 p_{n,k}(x) dx; equals 1/(n+1).
/// The quadrature is kept independent of the closed form so the identity
/// doubles as a self-test of both.
inline double weight_integral(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw DomainError("weight_integral: invalid (n,k)");
    return integrate_adaptive([n, k](double x) { return basis_weight(n, k, x); }, 0.0, 1.0,
                              1e-12);
}

namespace detail {
inline double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}
} // namespace detail

/// Algebraic moment T_{n,s}(x) = sum_k (k - nx)^s p_{n,k}(x).
inline double algebraic_moment(int n, MomentOrder s, double x) {
    if (n < 1)
        throw DomainError("algebraic_moment: n must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("algebraic_moment: x outside [0,1]");
    const auto w = basis_weights(n, x);
    CompensatedSum acc;
    for (int k = 0; k <= n; ++k)
        acc.add(detail::ipow(k - n * x, s.s) * w[static_cast<std::size_t>(k)]);
    return acc.value();
}

inline double algebraic_moment(int n, int s, double x) {
    return algebraic_moment(n, MomentOrder(s), x);
}

/// Mass of the basis outside the delta-neighbourhood of x:
/// sum over |k/n - x| > delta of p_{n,k}(x).
inline double tail_sum(int n, double x, double delta) {
    if (!(delta > 0.0))
        throw DomainError("tail_sum: delta must be positive");
    if (n < 1)
        throw DomainError("tail_sum: n must be >= 1");
    const auto w = basis_weights(n, x);
    CompensatedSum acc;
    for (int k = 0; k <= n; ++k)
        if (std::abs(static_cast<double>(k) / n - x) > delta)
            acc.add(w[static_cast<std::size_t>(k)]);
    return acc.value();
}

/// sum_k |y - k/n| p_{n,k}(y); classically < 1/(2 sqrt(n)).
inline double first_absolute_moment(int n, double y) {
    if (n < 1)
        throw DomainError("first_absolute_moment: n must be >= 1");
    if (!(y >= 0.0 && y <= 1.0))
        throw DomainError("first_absolute_moment: y outside [0,1]");
    const auto w = basis_weights(n, y);
    CompensatedSum acc;
    for (int k = 0; k <= n; ++k)
        acc.add(std::abs(y - static_cast<double>(k) / n) * w[static_cast<std::size_t>(k)]);
    return acc.value();
}

/// Empirical check of 0 <= T_{n,m} <= A n^{m/2} for an even order m:
/// the reported ratios max_x T_{n,m}(x)/n^{m/2} must stay bounded as n grows.
struct MomentGrowthReport {
    int order = 0;
    std::vector<int> n_values;
    std::vector<double> max_ratio; // per n, max over the x grid
    bool bounded = false;
};

inline MomentGrowthReport moment_growth_check(std::span<const int> n_list, int order,
                                              std::span<const double> x_grid) {
    if (order < 0 || order % 2 != 0)
        throw ParameterError("moment_growth_check: order must be even and nonnegative");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw ParameterError("moment_growth_check: n_list must be increasing");

    MomentGrowthReport rep;
    rep.order = order;
    const int half = order / 2;
    for (int n : n_list) {
        double scale = 1.0;
        for (int i = 0; i < half; ++i)
            scale *= n;
        double worst = 0.0;
        for (double x : x_grid)
            worst = std::max(worst, algebraic_moment(n, order, x) / scale);
        rep.n_values.push_back(n);
        rep.max_ratio.push_back(worst);
    }
    rep.bounded = true;
    if (!rep.max_ratio.empty()) {
        const double cap = rep.max_ratio.front() * 1.25 + 1e-12;
        for (double r : rep.max_ratio)
            if (r > cap)
                rep.bounded = false;
    }
    return rep;
}

} // namespace logbern
