#pragma once

// Evaluable real functions on [0,1] with optional first/second derivatives,
// the transformed function f_mu = f / ln_mu, and the named built-ins the CLI
// exposes. Derivative access falls back to central finite differences unless
// the caller disables that.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "logbern/errors.hpp"
#include "logbern/warp.hpp"

namespace logbern {

struct AnalyticFunction {
    std::function<double(double)> eval;
    std::function<double(double)> d1; // optional
    std::function<double(double)> d2; // optional
    bool positive = false;            // declared f > 0 on [0,1]

    double operator()(double x) const { return eval(x); }
    bool has_derivatives() const { return static_cast<bool>(d1) && static_cast<bool>(d2); }
};

namespace detail {

inline double fd_step(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }

// Central differences where the stencil fits in [0,1], one-sided O(h^2)
// formulas otherwise.
inline double fd_d1(const std::function<double(double)>& f, double x) {
    const double h = fd_step(x);
    if (x - h >= 0.0 && x + h <= 1.0)
        return (f(x + h) - f(x - h)) / (2.0 * h);
    if (x + 2.0 * h <= 1.0)
        return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
    return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
}

inline double fd_d2(const std::function<double(double)>& f, double x) {
    const double h = fd_step(x);
    if (x - h >= 0.0 && x + h <= 1.0)
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    if (x + 3.0 * h <= 1.0)
        return (2.0 * f(x) - 5.0 * f(x + h) + 4.0 * f(x + 2.0 * h) - f(x + 3.0 * h)) / (h * h);
    return (2.0 * f(x) - 5.0 * f(x - h) + 4.0 * f(x - 2.0 * h) - f(x - 3.0 * h)) / (h * h);
}

} // namespace detail

inline double deriv1(const AnalyticFunction& f, double x, bool fd_fallback = true) {
    if (f.d1)
        return f.d1(x);
    if (!fd_fallback)
        throw CapabilityError("first derivative unavailable and finite differences disabled");
    return detail::fd_d1(f.eval, x);
}

inline double deriv2(const AnalyticFunction& f, double x, bool fd_fallback = true) {
    if (f.d2)
        return f.d2(x);
    if (!fd_fallback)
        throw CapabilityError("second derivative unavailable and finite differences disabled");
    return detail::fd_d2(f.eval, x);
}

/// f_mu = f / ln_mu, with derivatives by the quotient rule from (f, f', f'')
/// and the closed-form derivatives of ln_mu.
struct TransformedFunction {
    AnalyticFunction base;
    MuParam mu;

    double operator()(double x) const { return base.eval(x) / ln_mu(mu, x); }

    double deriv1(double x, bool fd_fallback = true) const {
        const double w = ln_mu(mu, x), wp = ln_mu_d1(mu, x);
        const double f = base.eval(x), fp = logbern::deriv1(base, x, fd_fallback);
        return fp / w - f * wp / (w * w);
    }

    double deriv2(double x, bool fd_fallback = true) const {
        const double w = ln_mu(mu, x), wp = ln_mu_d1(mu, x), wpp = ln_mu_d2(mu, x);
        const double f = base.eval(x);
        const double fp = logbern::deriv1(base, x, fd_fallback);
        const double fpp = logbern::deriv2(base, x, fd_fallback);
        return fpp / w - 2.0 * fp * wp / (w * w) - f * wpp / (w * w) +
               2.0 * f * wp * wp / (w * w * w);
    }

    AnalyticFunction as_function(bool fd_fallback = true) const {
        TransformedFunction self = *this;
        AnalyticFunction g;
        g.eval = [self](double x) { return self(x); };
        g.d1 = [self, fd_fallback](double x) { return self.deriv1(x, fd_fallback); };
        g.d2 = [self, fd_fallback](double x) { return self.deriv2(x, fd_fallback); };
        return g;
    }
};

/// A ln_mu(x) + B ln_mu(x) e^{-x/(1+mu)} with analytic derivatives; these
/// functions annihilate the saturation operator D.
inline AnalyticFunction saturation_function(double A, double B, MuParam mu) {
    const double m = mu.value;
    const double c = 1.0 / (1.0 + m);
    AnalyticFunction f;
    f.eval = [A, B, m, c](double x) {
        const double w = std::log(1.0 + m + x);
        return A * w + B * w * std::exp(-x * c);
    };
    f.d1 = [A, B, m, c](double x) {
        const double w = std::log(1.0 + m + x);
        const double wp = 1.0 / (1.0 + m + x);
        const double E = std::exp(-x * c);
        return A * wp + B * (wp * E - w * c * E);
    };
    f.d2 = [A, B, m, c](double x) {
        const double d = 1.0 + m + x;
        const double w = std::log(d);
        const double wp = 1.0 / d;
        const double wpp = -1.0 / (d * d);
        const double E = std::exp(-x * c);
        return A * wpp + B * (wpp * E - 2.0 * wp * c * E + w * c * c * E);
    };
    return f;
}

/// Named built-ins reachable from the CLI. "saturation:A:B" carries its
/// coefficients in the id.
inline AnalyticFunction builtin_function(const std::string& id, MuParam mu) {
    const double m = mu.value;
    AnalyticFunction f;
    if (id == "ln_mu") {
        f.eval = [mu](double x) { return ln_mu(mu, x); };
        f.d1 = [mu](double x) { return ln_mu_d1(mu, x); };
        f.d2 = [mu](double x) { return ln_mu_d2(mu, x); };
        f.positive = true;
        return f;
    }
    if (id == "square") {
        f.eval = [](double x) { return x * x; };
        f.d1 = [](double x) { return 2.0 * x; };
        f.d2 = [](double) { return 2.0; };
        return f;
    }
    if (id == "sin") {
        f.eval = [](double x) { return std::sin(x); };
        f.d1 = [](double x) { return std::cos(x); };
        f.d2 = [](double x) { return -std::sin(x); };
        return f;
    }
    if (id == "abs_center") {
        f.eval = [](double x) { return std::abs(x - 0.5); };
        return f; // no derivatives: not C^1
    }
    if (id == "paper_f") {
        f.eval = [](double x) { return 0.2 * x * x + std::sin(x) + 0.5 * x + 0.1; };
        f.d1 = [](double x) { return 0.4 * x + std::cos(x) + 0.5; };
        f.d2 = [](double x) { return 0.4 - std::sin(x); };
        f.positive = true;
        return f;
    }
    if (id.rfind("saturation:", 0) == 0) {
        const std::string rest = id.substr(std::string("saturation:").size());
        const auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw ParameterError("builtin_function: expected saturation:A:B, got '" + id + "'");
        double A = 0.0, B = 0.0;
        try {
            A = std::stod(rest.substr(0, sep));
            B = std::stod(rest.substr(sep + 1));
        } catch (const std::exception&) {
            throw ParameterError("builtin_function: bad coefficients in '" + id + "'");
        }
        return saturation_function(A, B, MuParam(m));
    }
    throw ParameterError("builtin_function: unknown function id '" + id + "'");
}

inline std::vector<std::string> builtin_names() {
    return {"ln_mu", "square", "sin", "abs_center", "paper_f", "saturation:A:B"};
}

/// Worst absolute mismatch between declared derivatives and finite
/// differences of eval over an interior grid. Used to enforce the
/// AnalyticFunction consistency invariant.
inline double derivative_mismatch(const AnalyticFunction& f, int grid_points = 41) {
    double worst = 0.0;
    for (int i = 1; i + 1 < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        if (f.d1)
            worst = std::max(worst, std::abs(f.d1(x) - detail::fd_d1(f.eval, x)));
        if (f.d2)
            worst = std::max(worst, std::abs(f.d2(x) - detail::fd_d2(f.eval, x)));
    }
    return worst;
}

} // namespace logbern
