#pragma once

// Multiplicative-noise model and the logarithmic denoising pipeline:
// samples y_k = (1 + mu(t) + k/n) f(k/n) are linearized by ln, smoothed with
// L_n (which reproduces ln_mu and so removes the noise term exactly), and
// mapped back:
//
//   f(x) ~ exp(L_n(ln g, x)) / (1 + mu(t) + x).
//
// mu(t) is always an input; the pipeline never estimates it from the data.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "logbern/errors.hpp"
#include "logbern/functions.hpp"
#include "logbern/operators.hpp"
#include "logbern/warp.hpp"

namespace logbern {

/// Positive samples y_k at nodes k/n with the realized noise level mu(t).
struct NoisySignal {
    int n;
    std::vector<double> samples; // length n+1, strictly positive
    MuParam mu_t;

    NoisySignal(int n_, std::vector<double> samples_, MuParam mu)
        : n(n_), samples(std::move(samples_)), mu_t(mu) {
        if (n < 1)
            throw ParameterError("NoisySignal: n must be >= 1");
        if (samples.size() != static_cast<std::size_t>(n) + 1)
            throw DataError("NoisySignal: expected n+1 samples");
        for (std::size_t k = 0; k < samples.size(); ++k)
            if (!(samples[k] > 0.0) || !std::isfinite(samples[k]))
                throw DataError("NoisySignal: sample " + std::to_string(k) +
                                " is not strictly positive");
    }
};

inline NoisySignal synthesize_noisy(const AnalyticFunction& f, MuParam mu_t, int n) {
    if (n < 1)
        throw ParameterError("synthesize_noisy: n must be >= 1");
    std::vector<double> y(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double x = static_cast<double>(k) / n;
        const double fx = f.eval(x);
        if (!(fx > 0.0))
            throw DataError("synthesize_noisy: f(" + std::to_string(x) +
                            ") is not strictly positive");
        y[static_cast<std::size_t>(k)] = (1.0 + mu_t.value + x) * fx;
    }
    return NoisySignal(n, std::move(y), mu_t);
}

struct DenoiseResult {
    GridFunction reconstruction;
    std::optional<double> max_error; // vs a reference truth, when known
    int n = 0;
    double mu_t = 0.0;
};

/// exp(L_n(ln y, x)) / (1 + mu(t) + x) on the given grid.
inline DenoiseResult denoise(const NoisySignal& signal, std::span<const double> grid) {
    std::vector<double> lny(signal.samples.size());
    for (std::size_t k = 0; k < signal.samples.size(); ++k)
        lny[k] = std::log(signal.samples[k]);
    const LogOperator op(std::move(lny), signal.mu_t, signal.n);

    DenoiseResult out;
    out.n = signal.n;
    out.mu_t = signal.mu_t.value;
    out.reconstruction.nodes.assign(grid.begin(), grid.end());
    out.reconstruction.values.reserve(grid.size());
    for (double x : grid)
        out.reconstruction.values.push_back(std::exp(op(x)) / (1.0 + signal.mu_t.value + x));
    return out;
}

inline double max_reconstruction_error(const DenoiseResult& result, const AnalyticFunction& truth) {
    double worst = 0.0;
    for (std::size_t i = 0; i < result.reconstruction.nodes.size(); ++i)
        worst = std::max(worst, std::abs(result.reconstruction.values[i] -
                                         truth.eval(result.reconstruction.nodes[i])));
    return worst;
}

/// Noise levels of the bundled worked example.
inline const std::vector<double>& paper_mu_values() {
    static const std::vector<double> mus{0.2688, 0.9169, 1.1294};
    return mus;
}

struct PaperExampleCase {
    double mu = 0.0;
    int n = 0;
    double max_error = 0.0;
    GridFunction truth;
    GridFunction noisy; // g(x) = (1 + mu + x) f(x)
    GridFunction reconstruction;
};

struct PaperExampleReport {
    std::vector<PaperExampleCase> cases; // (mu1,n10), (mu1,n30), (mu2,n10), ...
};

inline PaperExampleReport paper_example_suite(int grid_points = 1001) {
    PaperExampleReport rep;
    const auto grid = uniform_nodes(grid_points);
    for (double m : paper_mu_values()) {
        for (int n : {10, 30}) {
            const MuParam mu(m);
            const AnalyticFunction f = builtin_function("paper_f", mu);
            const NoisySignal signal = synthesize_noisy(f, mu, n);
            const DenoiseResult res = denoise(signal, grid);

            PaperExampleCase c;
            c.mu = m;
            c.n = n;
            c.max_error = max_reconstruction_error(res, f);
            c.reconstruction = res.reconstruction;
            c.truth.nodes = grid;
            c.noisy.nodes = grid;
            for (double x : grid) {
                c.truth.values.push_back(f.eval(x));
                c.noisy.values.push_back((1.0 + m + x) * f.eval(x));
            }
            rep.cases.push_back(std::move(c));
        }
    }
    return rep;
}

/// One draw of mu ~ N(0, sigma^2) conditioned on mu > 0, seeded and
/// reproducible. The method requires mu(t) > 0, so nonpositive draws are
/// rejected.
inline double sample_positive_mu(double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0))
        throw ParameterError("sample_positive_mu: sigma must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double m = gauss(rng);
        if (m > 0.0)
            return m;
    }
    throw NumericError("sample_positive_mu: rejection sampling failed");
}

} // namespace logbern
