// Batch front end for the logarithmic-operator library.
//
// Subcommands:
//   approximate    apply L_n to a built-in or sampled function, emit CSV
//   denoise        run the multiplicative-noise pipeline (file, synthetic,
//                  or the built-in worked example)
//   verify         run a verification suite, emit a JSON report
//   moments        algebraic-moment growth diagnostics, emit CSV
//   paper-example  the six worked denoising cases
//
// Exit codes: 0 success, 2 configuration error, 3 numeric error, 4 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logbern/logbern.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitData = 4;

struct RunConfig {
    std::string command;
    double mu = 1.0;
    bool mu_set = false;
    int n = 0;
    std::vector<int> n_list;
    int grid_points = 1001;
    std::string function_id;
    std::string input_path;
    std::string output_path;
    std::string suite;
    int moment_order = 2;
    bool paper_example = false;
    double sample_mu_sigma = 0.0;
};

void require_finite(const std::vector<double>& values, const std::string& what) {
    for (double v : values)
        if (!std::isfinite(v))
            throw logbern::NumericError("non-finite value while computing " + what);
}

std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("LOGBERN_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(s));
        } catch (const std::exception&) {
            throw logbern::ParameterError("LOGBERN_SEED must be an unsigned integer");
        }
    }
    return 0;
}

int cmd_approximate(const RunConfig& cfg) {
    using namespace logbern;
    if (cfg.output_path.empty())
        throw ParameterError("approximate: --out is required");
    if (cfg.grid_points < 2)
        throw ParameterError("approximate: --grid must be >= 2");
    const MuParam mu(cfg.mu);

    std::optional<AnalyticFunction> truth;
    std::vector<double> samples;
    if (!cfg.function_id.empty()) {
        if (cfg.n < 1)
            throw ParameterError("approximate: --n must be >= 1");
        truth = builtin_function(cfg.function_id, mu);
        samples = sample_at_nodes(*truth, cfg.n);
    } else if (!cfg.input_path.empty()) {
        const auto data = read_signal_file(cfg.input_path);
        if (data.kind != SignalFileData::Kind::FunctionSamples)
            throw DataError("approximate: input must be a logbern-function file");
        if (data.n != cfg.n && cfg.n != 0)
            throw DataError("approximate: file declares n=" + std::to_string(data.n) +
                            " but --n=" + std::to_string(cfg.n));
        samples = data.values;
    } else {
        throw ParameterError("approximate: provide --fn or --in");
    }

    const int n = static_cast<int>(samples.size()) - 1;
    const LogOperator op(samples, mu, n);
    const auto grid = uniform_nodes(cfg.grid_points);

    CsvTable table;
    table.columns = {"x", "f", "Lnf", "error"};
    std::vector<double> lnf_values;
    for (double x : grid) {
        const double lnf = op(x);
        lnf_values.push_back(lnf);
        const double fx = truth ? truth->eval(x) : std::numeric_limits<double>::quiet_NaN();
        const double err = truth ? lnf - fx : std::numeric_limits<double>::quiet_NaN();
        table.rows.push_back({x, fx, lnf, err});
    }
    require_finite(lnf_values, "L_n f");
    table.write(cfg.output_path);
    std::cout << "wrote " << cfg.output_path << " (" << table.rows.size() << " rows)\n";
    return 0;
}

void write_denoise_csv(const fs::path& path, const logbern::DenoiseResult& result,
                       const logbern::AnalyticFunction* truth, double mu) {
    logbern::CsvTable table;
    table.columns = {"x", "truth", "noisy", "reconstruction"};
    for (std::size_t i = 0; i < result.reconstruction.nodes.size(); ++i) {
        const double x = result.reconstruction.nodes[i];
        const double t = truth ? truth->eval(x) : std::numeric_limits<double>::quiet_NaN();
        const double g = truth ? (1.0 + mu + x) * truth->eval(x)
                               : std::numeric_limits<double>::quiet_NaN();
        table.rows.push_back({x, t, g, result.reconstruction.values[i]});
    }
    require_finite(result.reconstruction.values, "reconstruction");
    table.write(path);
}

int run_paper_example(const RunConfig& cfg) {
    using namespace logbern;
    if (cfg.output_path.empty())
        throw ParameterError("paper-example: --out directory is required");
    const auto report = paper_example_suite(cfg.grid_points);
    fs::create_directories(cfg.output_path);

    CsvTable summary;
    summary.columns = {"mu", "n", "max_error"};
    int mu_index = 0;
    double prev_mu = -1.0;
    for (const auto& c : report.cases) {
        if (c.mu != prev_mu) {
            ++mu_index;
            prev_mu = c.mu;
        }
        CsvTable table;
        table.columns = {"x", "truth", "noisy", "reconstruction"};
        for (std::size_t i = 0; i < c.reconstruction.nodes.size(); ++i)
            table.rows.push_back({c.reconstruction.nodes[i], c.truth.values[i],
                                  c.noisy.values[i], c.reconstruction.values[i]});
        require_finite(c.reconstruction.values, "reconstruction");
        std::ostringstream name;
        name << "paper_mu" << mu_index << "_n" << c.n << ".csv";
        table.write(fs::path(cfg.output_path) / name.str());
        summary.rows.push_back({c.mu, static_cast<double>(c.n), c.max_error});
        std::cout << "mu=" << format_value(c.mu) << " n=" << c.n
                  << " max_error=" << format_value(c.max_error) << "\n";
    }
    summary.write(fs::path(cfg.output_path) / "summary.csv");
    std::cout << "wrote " << cfg.output_path << "/summary.csv\n";
    return 0;
}

int cmd_denoise(const RunConfig& cfg) {
    using namespace logbern;
    if (cfg.paper_example)
        return run_paper_example(cfg);
    if (cfg.output_path.empty())
        throw ParameterError("denoise: --out is required");
    if (cfg.grid_points < 2)
        throw ParameterError("denoise: --grid must be >= 2");

    std::optional<NoisySignal> signal;
    std::optional<AnalyticFunction> truth;
    double mu_value = cfg.mu;
    if (!cfg.input_path.empty()) {
        const auto data = read_signal_file(cfg.input_path);
        if (data.kind != SignalFileData::Kind::Signal)
            throw DataError("denoise: input must be a logbern-signal file");
        if (data.mu)
            mu_value = *data.mu;
        else if (!cfg.mu_set)
            throw ParameterError("denoise: signal file declares no mu; pass --mu");
        signal.emplace(data.n, data.values, MuParam(mu_value));
    } else if (!cfg.function_id.empty()) {
        if (cfg.n < 1)
            throw ParameterError("denoise: --n must be >= 1");
        if (cfg.sample_mu_sigma > 0.0) {
            mu_value = sample_positive_mu(cfg.sample_mu_sigma, seed_from_env());
            std::cout << "sampled mu=" << format_value(mu_value) << "\n";
        }
        const MuParam mu(mu_value);
        truth = builtin_function(cfg.function_id, mu);
        signal.emplace(synthesize_noisy(*truth, mu, cfg.n));
    } else {
        throw ParameterError("denoise: provide --in, --fn, or --paper-example");
    }

    const auto grid = uniform_nodes(cfg.grid_points);
    auto result = denoise(*signal, grid);
    if (truth)
        result.max_error = max_reconstruction_error(result, *truth);
    write_denoise_csv(cfg.output_path, result, truth ? &*truth : nullptr, mu_value);
    std::cout << "wrote " << cfg.output_path << "\n";
    if (result.max_error)
        std::cout << "max_error=" << format_value(*result.max_error) << "\n";
    return 0;
}

json to_json(const logbern::SuiteReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json j{{"id", c.id},
               {"passed", c.passed},
               {"measured", c.measured},
               {"threshold", c.threshold},
               {"comparator", c.comparator}};
        if (!c.note.empty())
            j["note"] = c.note;
        checks.push_back(std::move(j));
    }
    return json{{"suite", rep.suite}, {"mu", rep.mu}, {"passed", rep.passed}, {"checks", checks}};
}

int cmd_verify(const RunConfig& cfg) {
    using namespace logbern;
    if (cfg.suite.empty())
        throw ParameterError("verify: --suite is required");
    const SuiteReport rep = run_verify_suite(cfg.suite, MuParam(cfg.mu), cfg.function_id);
    const std::string text = to_json(rep).dump(2) + "\n";
    if (cfg.output_path.empty() || cfg.output_path == "-")
        std::cout << text;
    else {
        atomic_write_text(cfg.output_path, text);
        std::cout << "wrote " << cfg.output_path << (rep.passed ? " (passed)" : " (FAILED)")
                  << "\n";
    }
    return rep.passed ? 0 : 1;
}

int cmd_moments(const RunConfig& cfg) {
    using namespace logbern;
    if (cfg.output_path.empty())
        throw ParameterError("moments: --out is required");
    std::vector<int> n_list = cfg.n_list;
    if (n_list.empty())
        n_list = {10, 100, 1000};
    const auto grid = uniform_nodes(cfg.grid_points < 2 ? 101 : cfg.grid_points);
    const auto rep = moment_growth_check(n_list, cfg.moment_order, grid);

    CsvTable table;
    table.columns = {"n", "order", "max_ratio"};
    for (std::size_t i = 0; i < rep.n_values.size(); ++i)
        table.rows.push_back({static_cast<double>(rep.n_values[i]),
                              static_cast<double>(rep.order), rep.max_ratio[i]});
    table.write(cfg.output_path);
    std::cout << "wrote " << cfg.output_path << "; bounded=" << (rep.bounded ? "yes" : "no")
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bernstein-type logarithmic operators: approximation, analysis, denoising"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub, bool with_n) {
        sub->add_option("--mu", cfg.mu, "shift parameter mu > 0")
            ->check(CLI::PositiveNumber)
            ->each([&cfg](const std::string&) { cfg.mu_set = true; });
        if (with_n)
            sub->add_option("--n", cfg.n, "operator degree");
        sub->add_option("--grid", cfg.grid_points, "number of evaluation nodes (default 1001)");
        sub->add_option("--out", cfg.output_path, "output path");
    };

    CLI::App* approx = app.add_subcommand("approximate", "apply L_n and emit (x,f,Lnf,error) CSV");
    add_common(approx, true);
    approx->add_option("--fn", cfg.function_id, "built-in function id");
    approx->add_option("--in", cfg.input_path, "logbern-function sample file");

    CLI::App* den = app.add_subcommand("denoise", "multiplicative-noise pipeline");
    add_common(den, true);
    den->add_option("--fn", cfg.function_id, "built-in truth for a synthetic run");
    den->add_option("--in", cfg.input_path, "logbern-signal file");
    den->add_flag("--paper-example", cfg.paper_example, "run the six worked cases");
    den->add_option("--sample-mu", cfg.sample_mu_sigma,
                    "draw mu ~ N(0,sigma^2) conditioned on mu>0 (seed: LOGBERN_SEED)");

    CLI::App* ver = app.add_subcommand("verify", "run a verification suite, emit JSON");
    add_common(ver, false);
    ver->add_option("--suite", cfg.suite, "one of: warp bound voronovskaja saturation shape bv "
                                          "core operators denoise");
    ver->add_option("--fn", cfg.function_id, "narrow bound/saturation suites to one function");

    CLI::App* mom = app.add_subcommand("moments", "algebraic moment growth report");
    add_common(mom, false);
    mom->add_option("--order", cfg.moment_order, "even moment order (default 2)");
    mom->add_option("--n-list", cfg.n_list, "degrees to test")->delimiter(',');

    CLI::App* paper = app.add_subcommand("paper-example", "the six worked denoising cases");
    add_common(paper, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (approx->parsed())
            return cmd_approximate(cfg);
        if (den->parsed())
            return cmd_denoise(cfg);
        if (ver->parsed())
            return cmd_verify(cfg);
        if (mom->parsed())
            return cmd_moments(cfg);
        if (paper->parsed()) {
            cfg.paper_example = true;
            return run_paper_example(cfg);
        }
        return kExitConfig;
    } catch (const logbern::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const logbern::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const logbern::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const logbern::CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const logbern::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
