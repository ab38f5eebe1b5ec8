// Acceptance suite: nine numbered criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "logbern/logbern.hpp"

using namespace logbern;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    if (!ok)
        ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

double sup_error(const AnalyticFunction& f, MuParam mu, int n, int grid_points = 1001) {
    const LogOperator op(f, mu, n);
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        worst = std::max(worst, std::abs(op(x) - f.eval(x)));
    }
    return worst;
}

// 1. Reproduction identity at 1e-10 across mu and n, under one second.
void criterion1() {
    Timer t;
    double worst = 0.0;
    for (double m : {0.2688, 1.0, 1.1294}) {
        const MuParam mu(m);
        const AnalyticFunction f = builtin_function("ln_mu", mu);
        for (int n : {1, 10, 100, 200})
            worst = std::max(worst, sup_error(f, mu, n));
    }
    const double secs = t.seconds();
    report(1, "reproduction of ln_mu", worst <= 1e-10 && secs < 1.0,
           fmt("max error %.3g <= 1e-10, %.2fs", worst, secs));
}

// 2. n gamma_n -> 1/16 for mu = 1: within 1% at n = 1e4 and monotone.
void criterion2() {
    Timer t;
    const MuParam mu(1.0);
    std::vector<double> seq;
    for (int n : {100, 1000, 10000})
        seq.push_back(n * gamma_n(WarpContext(mu, n)).gamma);
    const double limit = 0.0625;
    const double rel = std::abs(seq.back() - limit) / limit;
    bool monotone = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (std::abs(seq[i] - limit) > std::abs(seq[i - 1] - limit))
            monotone = false;
    const double secs = t.seconds();
    report(2, "warp gap asymptotics", rel <= 0.01 && monotone && secs < 1.0,
           fmt("n*gamma_n = %.6f at n=1e4 (rel dev %.2e), %.2fs", seq.back(), rel, secs));
}

// 3. Quantitative error bound with zero violations.
void criterion3() {
    const MuParam mu(1.0);
    double worst_margin = 1e300;
    int violations = 0;
    for (const char* id : {"square", "sin", "abs_center"}) {
        const AnalyticFunction f = builtin_function(id, mu);
        for (int n : {16, 64, 256, 1024}) {
            const double bound = error_bound(f, mu, n);
            const double measured = sup_error(f, mu, n);
            worst_margin = std::min(worst_margin, bound - measured);
            if (measured > bound)
                ++violations;
        }
    }
    report(3, "error bound validity", violations == 0,
           fmt("0 violations over 12 cases, smallest margin %.3g", worst_margin));
}

// 4. Voronovskaja deviations: 4x drop from n=500 to n=4000, monotone with
//    5% slack, under thirty seconds.
void criterion4() {
    Timer t;
    const MuParam mu(1.0);
    const AnalyticFunction f = builtin_function("square", mu);
    bool ok = true;
    double worst_ratio = 0.0;
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        std::vector<double> devs;
        for (int n : {500, 1000, 2000, 4000})
            devs.push_back(voronovskaja_residual(f, mu, n, x).deviation);
        for (std::size_t i = 1; i < devs.size(); ++i)
            ok = ok && devs[i] <= 1.05 * devs[i - 1];
        const double ratio = devs.back() / devs.front();
        worst_ratio = std::max(worst_ratio, ratio);
        ok = ok && ratio <= 0.25;
    }
    const double secs = t.seconds();
    report(4, "voronovskaja decay", ok && secs < 30.0,
           fmt("worst dev(4000)/dev(500) = %.3f <= 0.25, %.2fs", worst_ratio, secs));
}

// 5. Saturation kernel: D annihilates it; n sup|L_n f - f| drops 4x.
void criterion5() {
    const MuParam mu(1.0);
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double worst_kernel = 0.0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SaturationCoefficients c{coef(rng), coef(rng)};
        const AnalyticFunction f = saturation_solution(c, mu);
        for (int i = 1; i < 999; ++i)
            worst_kernel =
                std::max(worst_kernel, std::abs(differential_operator_D(f, mu, i / 999.0)));
        const double e100 = 100.0 * sup_error(f, mu, 100, 201);
        const double e1600 = 1600.0 * sup_error(f, mu, 1600, 201);
        worst_ratio = std::max(worst_ratio, e1600 / e100);
    }
    report(5, "saturation class", worst_kernel <= 1e-10 && worst_ratio <= 0.25,
           fmt("max |D| = %.3g, worst decay ratio %.3f", worst_kernel, worst_ratio));
}

// 6. Shape suite: monotonicity, concavity, BV contraction, monotone-in-n.
void criterion6() {
    const MuParam mu(1.0);
    const auto with_lnmu = [&mu](std::function<double(double)> g) {
        AnalyticFunction f;
        f.eval = [g = std::move(g), mu](double x) { return g(x) * ln_mu(mu, x); };
        return f;
    };

    double min_deriv = 1e300;
    for (const auto& f : {with_lnmu([](double x) { return x; }),
                          with_lnmu([](double x) { return x * x; }),
                          with_lnmu([](double x) { return std::expm1(x); })})
        for (int n : {5, 20, 80})
            for (int i = 0; i <= 200; ++i)
                min_deriv = std::min(min_deriv, lnf_derivative(f, mu, n, i / 200.0));

    double max_second = -1e300;
    for (const auto& f :
         {with_lnmu([](double x) { return std::sin(1.5707963267948966 * x); }),
          with_lnmu([](double x) { return 1.0 - (1.0 - x) * (1.0 - x); }),
          with_lnmu([](double x) { return std::log1p(x); })})
        for (int n : {5, 20, 80})
            for (int i = 1; i < 200; ++i)
                max_second = std::max(max_second, second_derivative_ratio(f, mu, n, i / 200.0));

    std::mt19937_64 rng(777);
    int bv_violations = 0;
    const int degrees[] = {5, 20, 80};
    for (int i = 0; i < 100; ++i) {
        const AnalyticFunction f = verify_detail::random_smooth(rng);
        if (!bv_contraction_check(f, mu, degrees[i % 3]).holds)
            ++bv_violations;
    }

    const std::vector<std::function<double(double)>> convex = {
        [](double x) { return x; },
        [](double x) { return x * x; },
        [](double x) { return x * x * x; },
        [](double x) { return x * x * x * x; },
        [](double x) { return std::expm1(x); },
        [](double x) { return std::sinh(x); },
        [](double x) { return x + x * x; },
        [](double x) { return x * std::exp(x); },
        [](double x) { return 0.5 * std::expm1(2.0 * x); },
        [](double x) { return x * x + x * x * x * x; },
    };
    bool chain_ok = true;
    const auto grid = uniform_nodes(101);
    const std::vector<int> ns{5, 10, 20, 40};
    for (const auto& g : convex)
        chain_ok = chain_ok &&
                   monotone_in_n_check(with_lnmu(g), mu, ns, grid, ShapeClass::IncreasingConvex)
                       .holds;

    const bool ok =
        min_deriv >= -1e-10 && max_second <= 1e-10 && bv_violations == 0 && chain_ok;
    report(6, "shape suite", ok,
           fmt("min L_n' %.3g, max (L_nf/ln)'' %.3g, BV violations %.0f", min_deriv, max_second,
               static_cast<double>(bv_violations)) +
               (chain_ok ? ", chain holds" : ", chain BROKEN"));
}

// 7. The six worked denoising cases against their reference errors.
void criterion7() {
    Timer t;
    const auto rep = paper_example_suite();
    const double expected[6] = {0.1109, 0.0343, 0.0658, 0.0202, 0.0622, 0.0191};
    bool ok = rep.cases.size() == 6;
    double worst_dev = 0.0;
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
        const double dev = std::abs(rep.cases[i].max_error - expected[i]);
        worst_dev = std::max(worst_dev, dev);
        ok = ok && dev <= 0.005;
        std::printf("    mu=%.4f n=%-2d max_error=%.4f (reference %.4f, dev %.2e)\n",
                    rep.cases[i].mu, rep.cases[i].n, rep.cases[i].max_error, expected[i], dev);
    }
    for (int j = 0; j < 3; ++j)
        ok = ok && rep.cases[2 * j + 1].max_error < rep.cases[2 * j].max_error;
    const double secs = t.seconds();
    report(7, "paper denoising example", ok && secs < 1.0,
           fmt("six cases within 0.005 (worst dev %.2e), n=30 < n=10, %.2fs", worst_dev, secs));
}

// 8. Oracle equivalence: defining sum vs factorized path; King identities.
void criterion8() {
    std::mt19937_64 rng(20250810);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> mu_draw(0.1, 2.0);
    std::uniform_int_distribution<int> n_draw(1, 200);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double worst_fact = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
        AnalyticFunction f;
        f.eval = [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
        const MuParam m(mu_draw(rng));
        const int n = n_draw(rng);
        const double x = unit(rng);
        worst_fact = std::max(worst_fact,
                              std::abs(logarithmic(f, m, n, x) - logarithmic_direct(f, m, n, x)));
    }

    const MuParam mu(1.0);
    double worst_king = 0.0;
    AnalyticFunction e0, e1, e2;
    e0.eval = [](double) { return 1.0; };
    e1.eval = [](double x) { return x; };
    e2.eval = [](double x) { return x * x; };
    for (int n : {3, 17, 90}) {
        const WarpContext ctx(mu, n);
        const std::vector<std::function<double(double)>> node_fns = {
            [](double x) { return x; },
            [](double x) { return x * x; },
            [ctx](double x) { return warp(ctx, x); },
        };
        for (const auto& r : node_fns) {
            const OperatorSpec spec{OperatorFamily::King, n, std::nullopt, r};
            for (int i = 0; i <= 50; ++i) {
                const double x = i / 50.0;
                const double rx = r(x);
                worst_king = std::max(worst_king, std::abs(king(e0, spec, x) - 1.0));
                worst_king = std::max(worst_king, std::abs(king(e1, spec, x) - rx));
                worst_king = std::max(
                    worst_king, std::abs(king(e2, spec, x) - (rx / n + (n - 1.0) / n * rx * rx)));
            }
        }
    }
    report(8, "oracle equivalence", worst_fact <= 1e-12 && worst_king <= 1e-10,
           fmt("factorization dev %.3g <= 1e-12, King dev %.3g <= 1e-10", worst_fact,
               worst_king));
}

// 9. Moment identities against brute force; strict absolute-moment bound.
void criterion9() {
    double worst_moment = 0.0;
    for (int n = 1; n <= 64; ++n) {
        const auto row = log_binomial_row(n);
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            // brute-force sums in long double, straight from the definition
            long double t0 = 0.0L, t1 = 0.0L, t2 = 0.0L;
            long double binom = 1.0L;
            for (int k = 0; k <= n; ++k) {
                long double w = binom;
                if (x > 0.0 && x < 1.0)
                    w *= std::pow(static_cast<long double>(x), k) *
                         std::pow(1.0L - static_cast<long double>(x), n - k);
                else
                    w = (x == 0.0) ? (k == 0 ? 1.0L : 0.0L) : (k == n ? 1.0L : 0.0L);
                const long double d = k - static_cast<long double>(n) * x;
                t0 += w;
                t1 += d * w;
                t2 += d * d * w;
                binom *= static_cast<long double>(n - k) / static_cast<long double>(k + 1);
            }
            worst_moment = std::max(worst_moment,
                                    std::abs(algebraic_moment(n, 0, x) - double(t0)));
            worst_moment = std::max(worst_moment,
                                    std::abs(algebraic_moment(n, 1, x) - double(t1)));
            worst_moment = std::max(worst_moment,
                                    std::abs(algebraic_moment(n, 2, x) - double(t2)));
            worst_moment =
                std::max(worst_moment, std::abs(algebraic_moment(n, 2, x) - n * x * (1.0 - x)));
        }
    }

    int violations = 0;
    double worst_margin = 1e300;
    for (int n = 4; n <= 1024; n *= 2) {
        const double bound = 0.5 / std::sqrt(static_cast<double>(n));
        for (int i = 0; i <= 1000; ++i) {
            const double margin = bound - first_absolute_moment(n, i / 1000.0);
            worst_margin = std::min(worst_margin, margin);
            if (margin <= 0.0)
                ++violations;
        }
    }
    report(9, "moment identities", worst_moment <= 1e-10 && violations == 0,
           fmt("moment dev %.3g <= 1e-10, abs-moment margin %.3g, 0 violations", worst_moment,
               worst_margin));
}

} // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d/9 criteria passed in %.1fs\n", 9 - failures, total.seconds());
    return failures;
}
