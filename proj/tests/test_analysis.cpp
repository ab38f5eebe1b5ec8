#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "logbern/analysis.hpp"
#include "logbern/functions.hpp"

using namespace logbern;
using Catch::Approx;

namespace {
AnalyticFunction make_fn(std::function<double(double)> eval) {
    AnalyticFunction f;
    f.eval = std::move(eval);
    return f;
}
} // namespace

TEST_CASE("modulus of continuity") {
    SECTION("linear function: omega(delta) = |c| delta") {
        const auto f = make_fn([](double x) { return -3.0 * x; });
        const auto est = modulus_of_continuity(f, 0.1);
        CHECK(est.omega == Approx(0.3).margin(1e-12));
        CHECK(est.grid_step <= 0.01 + 1e-15);
    }
    SECTION("constant function") {
        const auto f = make_fn([](double) { return 4.2; });
        CHECK(modulus_of_continuity(f, 0.37).omega == 0.0);
    }
    SECTION("x^2 at delta = 0.1: attained at the right edge") {
        const auto f = make_fn([](double x) { return x * x; });
        // exhaustive pair scan at step 1e-4 gives 0.19
        double brute = 0.0;
        const int m = 10001;
        for (int i = 0; i < m; ++i) {
            const double x = i / double(m - 1);
            for (int j = i + 1; j < m && (j - i) <= 1000; ++j)
                brute = std::max(brute, std::abs(x * x - (j / double(m - 1)) * (j / double(m - 1))));
        }
        CHECK(brute == Approx(0.19).margin(1e-8));
        CHECK(modulus_of_continuity(f, 0.1).omega == Approx(0.19).margin(1e-10));
    }
    SECTION("parameter validation") {
        const auto f = make_fn([](double x) { return x; });
        CHECK_THROWS_AS(modulus_of_continuity(f, 0.0), ParameterError);
        CHECK_THROWS_AS(modulus_of_continuity(f, -0.5), ParameterError);
    }
}

TEST_CASE("error bound") {
    const MuParam mu(1.0);

    SECTION("reproduced function: bound and error are both zero") {
        const AnalyticFunction f = builtin_function("ln_mu", mu);
        CHECK(error_bound(f, mu, 25) == Approx(0.0).margin(1e-12));
        const LogOperator op(f, mu, 25);
        for (int i = 0; i <= 100; ++i)
            CHECK(std::abs(op(i / 100.0) - f.eval(i / 100.0)) <= 1e-12);
    }

    SECTION("x^2: measured error below the bound, bound decreasing") {
        const AnalyticFunction f = builtin_function("square", mu);
        double prev_bound = 1e300;
        for (int n : {16, 64, 100, 256, 1024}) {
            const double bound = error_bound(f, mu, n);
            const LogOperator op(f, mu, n);
            double measured = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double x = i / 1000.0;
                measured = std::max(measured, std::abs(op(x) - f.eval(x)));
            }
            CHECK(measured <= bound + 1e-10);
            CHECK(bound < prev_bound);
            prev_bound = bound;
        }
    }

    SECTION("bound holds for the nonsmooth member too") {
        const AnalyticFunction f = builtin_function("abs_center", mu);
        for (int n : {16, 256}) {
            const double bound = error_bound(f, mu, n);
            const LogOperator op(f, mu, n);
            double measured = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double x = i / 1000.0;
                measured = std::max(measured, std::abs(op(x) - f.eval(x)));
            }
            CHECK(measured <= bound + 1e-10);
        }
    }
}

TEST_CASE("voronovskaja limit and differential operator D") {
    const MuParam mu(1.0);

    SECTION("kernel elements annihilate D") {
        const AnalyticFunction w0 = builtin_function("ln_mu", mu);
        const AnalyticFunction w1 =
            saturation_solution(SaturationCoefficients{0.0, 1.0}, mu);
        const AnalyticFunction mix =
            saturation_solution(SaturationCoefficients{0.7, -0.3}, mu);
        for (int i = 0; i <= 200; ++i) {
            const double x = i / 200.0;
            CHECK(differential_operator_D(w0, mu, x) == Approx(0.0).margin(1e-12));
            CHECK(differential_operator_D(w1, mu, x) == Approx(0.0).margin(1e-12));
            CHECK(voronovskaja_limit(mix, mu, x) == Approx(0.0).margin(1e-12));
        }
    }

    SECTION("endpoints vanish through the x - x^2 factor") {
        const AnalyticFunction f = builtin_function("square", mu);
        CHECK(voronovskaja_limit(f, mu, 0.0) == 0.0);
        CHECK(voronovskaja_limit(f, mu, 1.0) == 0.0);
    }

    SECTION("shared kernel: D and the limit agree exactly") {
        const AnalyticFunction f = builtin_function("paper_f", mu);
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            CHECK(differential_operator_D(f, mu, x) == voronovskaja_limit(f, mu, x));
        }
        CHECK(differential_operator_D(f, mu, 0.5) != 0.0);
    }

    SECTION("capability error without derivatives") {
        const auto f = make_fn([](double x) { return x; });
        CHECK_NOTHROW(differential_operator_D(f, mu, 0.5, true));
        CHECK_THROWS_AS(differential_operator_D(f, mu, 0.5, false), CapabilityError);
    }
}

TEST_CASE("voronovskaja residual") {
    const MuParam mu(1.0);

    SECTION("reproduced function: residual identically zero") {
        const AnalyticFunction f = builtin_function("ln_mu", mu);
        for (int n : {10, 100, 1000}) {
            // the factor n amplifies the ~1e-13 reproduction rounding
            const auto rep = voronovskaja_residual(f, mu, n, 0.4);
            CHECK(rep.scaled_residual == Approx(0.0).margin(n * 1e-12));
            CHECK(rep.deviation == Approx(0.0).margin(n * 1e-12));
        }
    }

    SECTION("x = 0: endpoint interpolation kills the residual") {
        const AnalyticFunction f = builtin_function("square", mu);
        for (int n : {5, 50})
            CHECK(voronovskaja_residual(f, mu, n, 0.0).scaled_residual == 0.0);
    }

    SECTION("x^2 at x = 1/2: deviation shrinks by 4x from n=500 to n=4000") {
        const AnalyticFunction f = builtin_function("square", mu);
        const double d500 = voronovskaja_residual(f, mu, 500, 0.5).deviation;
        const double d4000 = voronovskaja_residual(f, mu, 4000, 0.5).deviation;
        CHECK(d4000 <= 0.25 * d500);
        double prev = d500;
        for (int n : {1000, 2000, 4000}) {
            const double dev = voronovskaja_residual(f, mu, n, 0.5).deviation;
            CHECK(dev <= prev * 1.05);
            prev = dev;
        }
    }
}

TEST_CASE("saturation solutions") {
    const MuParam mu(1.0);

    SECTION("A=1, B=0 is ln_mu and is reproduced") {
        const AnalyticFunction f = saturation_solution(SaturationCoefficients{1.0, 0.0}, mu);
        for (int i = 0; i <= 50; ++i) {
            const double x = i / 50.0;
            CHECK(f.eval(x) == Approx(ln_mu(mu, x)).margin(1e-15));
            CHECK(logarithmic(f, mu, 30, x) == Approx(f.eval(x)).margin(1e-12));
        }
    }

    SECTION("zero solution maps to zero") {
        const AnalyticFunction f = saturation_solution(SaturationCoefficients{0.0, 0.0}, mu);
        for (int i = 0; i <= 20; ++i)
            CHECK(logarithmic(f, mu, 15, i / 20.0) == Approx(0.0).margin(1e-14));
    }

    SECTION("derivatives populated and consistent") {
        const AnalyticFunction f = saturation_solution(SaturationCoefficients{0.7, -0.3}, mu);
        REQUIRE(f.has_derivatives());
        CHECK(derivative_mismatch(f) < 1e-5);
    }

    SECTION("n sup|L_n f - f| decreases toward zero") {
        const AnalyticFunction f = saturation_solution(SaturationCoefficients{0.7, -0.3}, mu);
        double prev = 1e300;
        for (int n : {50, 100, 200, 400, 800, 1600}) {
            const LogOperator op(f, mu, n);
            double sup = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double x = i / 200.0;
                sup = std::max(sup, std::abs(op(x) - f.eval(x)));
            }
            CHECK(n * sup < prev);
            prev = n * sup;
        }
        CHECK(prev < 2e-5);
    }

    SECTION("kernel annihilation for random coefficients") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        for (int trial = 0; trial < 20; ++trial) {
            const AnalyticFunction f =
                saturation_solution(SaturationCoefficients{coef(rng), coef(rng)}, mu);
            for (int i = 1; i < 999; i += 7) {
                const double x = i / 999.0;
                CHECK(std::abs(differential_operator_D(f, mu, x)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("transformed function derivatives vs finite differences") {
    const MuParam mu(1.3);
    for (const char* id : {"ln_mu", "square", "sin", "paper_f"}) {
        const TransformedFunction fmu{builtin_function(id, mu), mu};
        for (int i = 1; i < 50; ++i) {
            const double x = i / 50.0;
            const double h = 1e-6;
            const double fd1 = (fmu(x + h) - fmu(x - h)) / (2.0 * h);
            CHECK(fmu.deriv1(x) == Approx(fd1).margin(1e-7).epsilon(1e-5));
            const double h2 = 1e-4;
            const double fd2 = (fmu(x + h2) - 2.0 * fmu(x) + fmu(x - h2)) / (h2 * h2);
            CHECK(fmu.deriv2(x) == Approx(fd2).margin(1e-6).epsilon(1e-5));
        }
    }
}

TEST_CASE("inverse theorem diagnostic") {
    const MuParam mu(1.0);
    const std::vector<int> ns{100, 200, 400, 800, 1600};
    const auto grid = uniform_nodes(201);

    SECTION("kernel case: both quantities vanish") {
        const AnalyticFunction f = saturation_solution(SaturationCoefficients{0.4, 0.9}, mu);
        const auto rep = inverse_theorem_diagnostic(f, mu, ns, grid);
        CHECK(rep.bounded);
        CHECK(rep.scaled_error.back() < 1e-4);
        CHECK(rep.scaled_error.back() < 0.25 * rep.scaled_error.front());
        CHECK(rep.derivative_bound < 1e-10);
    }

    SECTION("x^2: scaled error bounded, comparable to the Voronovskaja ceiling") {
        const AnalyticFunction f = builtin_function("square", mu);
        const auto rep = inverse_theorem_diagnostic(f, mu, ns, grid);
        CHECK(rep.bounded);
        CHECK(rep.scaled_error.back() <= 1.5 * rep.d_sup + 1e-6);
        CHECK(rep.scaled_error.back() >= 0.5 * rep.d_sup);
        CHECK(rep.d_sup <=
              rep.weight_max * rep.derivative_bound / (1.0 + mu.value) + 1e-12);
    }

    SECTION("corner: flagged as unbounded") {
        const AnalyticFunction f = builtin_function("abs_center", mu);
        const auto rep = inverse_theorem_diagnostic(f, mu, ns, grid);
        CHECK_FALSE(rep.bounded);
        CHECK(rep.scaled_error.back() > rep.scaled_error.front());
    }
}
