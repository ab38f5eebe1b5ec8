#pragma once

// The four operator families on C([0,1]):
//
//   B_n  classical Bernstein
//   V_n  King type, nodes warped by a pluggable r_n
//   L_n  logarithmic: L_n f = ln_mu(x) * B_n(f/ln_mu, a_n(x)); reproduces ln_mu
//   G_n  exponential comparison; reproduces exp(mu x) and exp(2 mu x)
//
// L_n is evaluated through the B_n(f_mu, a_n(x)) factorization; the defining
// sum is kept as an independent route (long double, multiplicative weight
// recurrence) for oracle checks.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "logbern/bernstein_basis.hpp"
#include "logbern/errors.hpp"
#include "logbern/functions.hpp"
#include "logbern/summation.hpp"
#include "logbern/warp.hpp"

namespace logbern {

enum class OperatorFamily { Bernstein, King, Logarithmic, Exponential };

struct OperatorSpec {
    OperatorFamily family = OperatorFamily::Bernstein;
    int n = 1;
    std::optional<MuParam> mu;                // required for Logarithmic/Exponential
    std::function<double(double)> node_fn;    // required for King, must map [0,1]->[0,1]
};

/// Function values on an explicit node set.
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> values;
};

/// points equispaced nodes covering [0,1] with exact endpoints.
inline std::vector<double> uniform_nodes(int points) {
    if (points < 1)
        throw ParameterError("uniform_nodes: need at least one point");
    std::vector<double> g(static_cast<std::size_t>(points));
    if (points == 1) {
        g[0] = 0.0;
        return g;
    }
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    g.front() = 0.0;
    g.back() = 1.0;
    return g;
}

inline std::vector<double> sample_at_nodes(const AnalyticFunction& f, int n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        v[static_cast<std::size_t>(k)] = f.eval(static_cast<double>(k) / n);
    return v;
}

/// B_n from samples at k/n (n = values.size()-1), reusing a log-binomial row.
inline double bernstein_samples(std::span<const double> node_values,
                                std::span<const double> log_binom_row, double x) {
    const auto w = basis_weights(log_binom_row, x);
    CompensatedSum acc;
    for (std::size_t k = 0; k < node_values.size(); ++k)
        acc.add(node_values[k] * w[k]);
    return acc.value();
}

inline double bernstein_samples(std::span<const double> node_values, double x) {
    return bernstein_samples(node_values, log_binomial_row(static_cast<int>(node_values.size()) - 1),
                             x);
}

inline double bernstein(const AnalyticFunction& f, int n, double x) {
    if (n < 1)
        throw ParameterError("bernstein: n must be >= 1");
    const auto samples = sample_at_nodes(f, n);
    return bernstein_samples(samples, x);
}

/// King operator V_n(f,x) = sum f(k/n) p_{n,k}(r_n(x)).
inline double king(const AnalyticFunction& f, const OperatorSpec& spec, double x) {
    if (spec.family != OperatorFamily::King)
        throw ParameterError("king: spec.family must be King");
    if (spec.n < 1)
        throw ParameterError("king: n must be >= 1");
    if (!spec.node_fn)
        throw ParameterError("king: node function missing");
    const double r = spec.node_fn(x);
    if (!(r >= 0.0 && r <= 1.0))
        throw DomainError("king: node function value outside [0,1]");
    const auto samples = sample_at_nodes(f, spec.n);
    return bernstein_samples(samples, r);
}

/// L_n f for one (f or node samples, mu, n); precomputes the f_mu samples and
/// the binomial row so grid sweeps share them. Evaluation at x = 0 and x = 1
/// returns the node samples themselves (endpoint interpolation).
class LogOperator {
public:
    LogOperator(std::vector<double> node_values, MuParam mu, int n)
        : mu_(mu), ctx_(mu, n), n_(n), node_values_(std::move(node_values)),
          log_row_(log_binomial_row(n)) {
        if (node_values_.size() != static_cast<std::size_t>(n_) + 1)
            throw ParameterError("LogOperator: need n+1 node samples");
        fmu_nodes_.resize(node_values_.size());
        for (int k = 0; k <= n_; ++k)
            fmu_nodes_[static_cast<std::size_t>(k)] =
                node_values_[static_cast<std::size_t>(k)] / ln_mu(mu_, static_cast<double>(k) / n_);
    }

    LogOperator(const AnalyticFunction& f, MuParam mu, int n)
        : LogOperator(sample_at_nodes(f, n), mu, n) {}

    /// L_n f (x).
    double operator()(double x) const {
        if (!(x >= 0.0 && x <= 1.0))
            throw DomainError("LogOperator: x outside [0,1]");
        if (x == 0.0)
            return node_values_.front();
        if (x == 1.0)
            return node_values_.back();
        return ln_mu(mu_, x) * ratio(x);
    }

    /// B_n(f_mu, a_n(x)) = L_n f(x) / ln_mu(x).
    double ratio(double x) const {
        if (x == 0.0)
            return fmu_nodes_.front();
        if (x == 1.0)
            return fmu_nodes_.back();
        return bernstein_samples(fmu_nodes_, log_row_, warp(ctx_, x));
    }

    int degree() const { return n_; }
    MuParam mu() const { return mu_; }
    const WarpContext& context() const { return ctx_; }
    const std::vector<double>& fmu_nodes() const { return fmu_nodes_; }

private:
    MuParam mu_;
    WarpContext ctx_;
    int n_;
    std::vector<double> node_values_;
    std::vector<double> log_row_;
    std::vector<double> fmu_nodes_;
};

inline double logarithmic(const AnalyticFunction& f, MuParam mu, int n, double x) {
    if (n < 1)
        throw ParameterError("logarithmic: n must be >= 1");
    return LogOperator(f, mu, n)(x);
}

/// Defining sum of L_n evaluated directly (long double weight recurrence,
/// no lgamma). Retained as the independent oracle route.
inline double logarithmic_direct(const AnalyticFunction& f, MuParam mu, int n, double x) {
    if (n < 1)
        throw ParameterError("logarithmic_direct: n must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("logarithmic_direct: x outside [0,1]");
    const WarpContext ctx(mu, n);
    const long double a = warp(ctx, x);
    long double sum = 0.0L;
    if (a == 1.0L) {
        sum = f.eval(1.0) / ln_mu(mu, 1.0);
    } else {
        long double t = 1.0L;
        for (int i = 0; i < n; ++i)
            t *= (1.0L - a);
        const long double ratio = a / (1.0L - a);
        for (int k = 0; k <= n; ++k) {
            sum += static_cast<long double>(f.eval(static_cast<double>(k) / n) /
                                            ln_mu(mu, static_cast<double>(k) / n)) *
                   t;
            t *= ratio * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
        }
    }
    return static_cast<double>(static_cast<long double>(ln_mu(mu, x)) * sum);
}

/// G_n with nodes (e^{mu x/n}-1)/(e^{mu/n}-1); reproduces exp_mu, exp_mu^2.
inline double exponential_comparison(const AnalyticFunction& f, MuParam mu, int n, double x) {
    if (n < 1)
        throw ParameterError("exponential_comparison: n must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("exponential_comparison: x outside [0,1]");
    const double m = mu.value;
    const double a = std::expm1(m * x / n) / std::expm1(m / n);
    const auto w = basis_weights(n, std::min(a, 1.0));
    CompensatedSum acc;
    for (int k = 0; k <= n; ++k)
        acc.add(f.eval(static_cast<double>(k) / n) * std::exp(-m * k / n) *
                w[static_cast<std::size_t>(k)]);
    return std::exp(m * x) * acc.value();
}

/// Korovkin test function built from powers of ln_mu: vanishes exactly at x0
/// and is strictly positive elsewhere.
inline double korovkin_h(MuParam mu, double lambda1, double lambda2, double x0, double x) {
    if (!(0.0 < lambda1 && lambda1 < lambda2))
        throw ParameterError("korovkin_h: need 0 < lambda1 < lambda2");
    if (!(x0 >= 0.0 && x0 <= 1.0) || !(x >= 0.0 && x <= 1.0))
        throw DomainError("korovkin_h: points outside [0,1]");
    const double t = ln_mu(mu, x) / ln_mu(mu, x0);
    return 1.0 + lambda2 / (lambda1 - lambda2) * std::pow(t, lambda1) +
           lambda1 / (lambda2 - lambda1) * std::pow(t, lambda2);
}

inline void validate_spec(const OperatorSpec& spec) {
    if (spec.n < 1)
        throw ParameterError("OperatorSpec: n must be >= 1");
    if ((spec.family == OperatorFamily::Logarithmic ||
         spec.family == OperatorFamily::Exponential) &&
        !spec.mu)
        throw ParameterError("OperatorSpec: mu required for this family");
    if (spec.family == OperatorFamily::King && !spec.node_fn)
        throw ParameterError("OperatorSpec: node function required for King");
}

inline double apply_operator(const AnalyticFunction& f, const OperatorSpec& spec, double x) {
    validate_spec(spec);
    switch (spec.family) {
    case OperatorFamily::Bernstein:
        return bernstein(f, spec.n, x);
    case OperatorFamily::King:
        return king(f, spec, x);
    case OperatorFamily::Logarithmic:
        return logarithmic(f, *spec.mu, spec.n, x);
    case OperatorFamily::Exponential:
        return exponential_comparison(f, *spec.mu, spec.n, x);
    }
    throw ParameterError("apply_operator: unknown family");
}

/// Vectorized evaluation; values identical to the pointwise calls.
inline GridFunction operator_on_grid(const AnalyticFunction& f, const OperatorSpec& spec,
                                     std::span<const double> nodes) {
    validate_spec(spec);
    GridFunction out;
    out.nodes.assign(nodes.begin(), nodes.end());
    out.values.reserve(nodes.size());
    if (spec.family == OperatorFamily::Logarithmic) {
        LogOperator op(f, *spec.mu, spec.n);
        for (double x : nodes)
            out.values.push_back(op(x));
        return out;
    }
    for (double x : nodes)
        out.values.push_back(apply_operator(f, spec, x));
    return out;
}

} // namespace logbern
