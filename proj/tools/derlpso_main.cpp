// Command-line front end: simulate benchmark problems, estimate parameters
// for a stored problem, and run full benchmark matrices.
//
// Exit codes: 0 success, 1 when every trial failed, 2 for usage or
// validation errors.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "derlpso/bench.hpp"
#include "derlpso/estimator.hpp"
#include "derlpso/io.hpp"
#include "derlpso/problem.hpp"

namespace fs = std::filesystem;
using namespace derlpso;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAllFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("DERLPSO_OUT_DIR"); env && *env) return env;
    return ".";
}

io::json parse_json_file(const fs::path& path, const char* what) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::exception& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
    try {
        return io::json::parse(text);
    } catch (const io::json::parse_error& e) {
        // nlohmann reports byte offsets; add the line number for editors.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw UsageError(std::string(what) + " " + path.string() + " line " +
                         std::to_string(line) + ": " + e.what());
    }
}

void load_config_overrides(const std::string& config_path, RunConfig& config,
                           io::HarnessOptions& options) {
    if (config_path.empty()) return;
    const io::json j = parse_json_file(config_path, "config");
    try {
        io::apply_config(j, config, options);
    } catch (const std::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

Equation parse_equation_or_throw(const std::string& id) {
    const auto equation = parse_equation(id);
    if (!equation) throw UsageError("unknown equation id: " + id);
    return *equation;
}

int cmd_simulate(const std::string& equation_id_str, int points, int trials,
                 std::uint64_t seed, const std::string& out_flag,
                 const std::string& config_path) {
    const Equation equation = parse_equation_or_throw(equation_id_str);
    RunConfig config = default_run_config(equation);
    io::HarnessOptions options;
    load_config_overrides(config_path, config, options);

    const fs::path out_dir = resolve_out_dir(out_flag);
    int written = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t problem_seed = problem_seed_for_trial(seed, trial);
        try {
            const Problem problem =
                generate_problem(equation, points, problem_seed, options.prior_stddev,
                                 config.integrator, options.fhn_constants);
            const fs::path path =
                out_dir / ("problem_" + equation_id_str + "_" + std::to_string(points) +
                           "pt_t" + std::to_string(trial) + ".json");
            io::write_text_atomic(path, io::problem_to_json(problem).dump(2) + "\n");
            if (problem.redraws > 0) {
                std::cerr << "trial " << trial << ": " << problem.redraws
                          << " parameter redraw(s) before the forward solve succeeded\n";
            }
            std::cout << path.string() << "\n";
            ++written;
        } catch (const std::invalid_argument&) {
            throw;  // grid/config validation problems are usage errors
        } catch (const std::exception& e) {
            std::cerr << "trial " << trial << " failed: " << e.what() << "\n";
        }
    }
    return written == 0 ? kExitAllFailed : kExitOk;
}

int cmd_estimate(const std::string& problem_path, const std::string& algo_id,
                 std::uint64_t seed, std::optional<int> max_iterations,
                 const std::string& out_flag, const std::string& config_path) {
    const auto algorithm = parse_algorithm(algo_id);
    if (!algorithm) throw UsageError("unknown algorithm id: " + algo_id);

    const io::json problem_json = parse_json_file(problem_path, "problem");
    Problem problem;
    try {
        problem = io::problem_from_json(problem_json);
    } catch (const std::exception& e) {
        throw UsageError(std::string("problem: ") + e.what());
    }

    RunConfig config = default_run_config(problem.equation);
    io::HarnessOptions options;
    load_config_overrides(config_path, config, options);
    if (max_iterations) config.swarm.max_iterations = *max_iterations;

    EstimationResult result;
    try {
        result = run_estimation(problem, config, *algorithm, seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const fs::path out_dir = resolve_out_dir(out_flag);
    const std::string stem = fs::path(problem_path).stem().string();
    const fs::path result_path = out_dir / (stem + "." + algo_id + ".result.json");
    const fs::path curve_path = out_dir / (stem + "." + algo_id + ".curve.csv");
    io::write_text_atomic(result_path,
                          io::result_to_json(result, problem, *algorithm, config).dump(2) + "\n");
    io::write_text_atomic(curve_path, io::loss_curve_csv(result));
    std::cout << result_path.string() << "\n" << curve_path.string() << "\n";
    return kExitOk;
}

int cmd_benchmark(const std::string& spec_path, std::optional<int> trials,
                  std::optional<int> jobs, const std::string& out_flag) {
    const io::json spec_json = parse_json_file(spec_path, "spec");
    BenchmarkSpec spec;
    try {
        spec = benchmark_spec_from_json(spec_json);
        if (trials) spec.trials = *trials;
        if (jobs) spec.jobs = *jobs;
        if (!out_flag.empty()) spec.out_dir = out_flag;
        spec.validate();
    } catch (const std::exception& e) {
        throw UsageError(std::string("spec: ") + e.what());
    }
    const fs::path out_dir =
        spec.out_dir.empty() ? resolve_out_dir(std::string{}) : fs::path(spec.out_dir);

    const std::vector<CellResult> cells = run_benchmark(spec);

    std::vector<io::SummaryRow> rows;
    rows.reserve(cells.size());
    int ok_trials = 0;
    int total_trials = 0;
    for (const CellResult& cell : cells) {
        rows.push_back(summarize_cell(cell));
        for (const TrialOutcome& t : cell.trials) {
            ++total_trials;
            if (t.ok) {
                ++ok_trials;
            } else {
                std::cerr << rows.back().equation << " points=" << cell.points << " "
                          << rows.back().algorithm << " trial " << t.trial
                          << " failed: " << t.error << "\n";
            }
        }
        const io::SummaryRow& row = rows.back();
        std::cout << row.equation << " points=" << row.points << " algo=" << row.algorithm
                  << " mean_mse=" << io::format_double(row.mean_mse)
                  << " sd=" << io::format_double(row.sd_mse) << " trials_ok=" << row.trials << "/"
                  << cell.trials.size() << "\n";
    }

    io::write_text_atomic(out_dir / "summary.csv", io::summary_csv(rows));
    io::write_text_atomic(out_dir / "manifest.json",
                          benchmark_manifest(spec, cells).dump(2) + "\n");
    return ok_trials == 0 && total_trials > 0 ? kExitAllFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameter estimation for differential equations with a "
                 "reinforcement-learning-controlled level-based particle swarm"};
    app.require_subcommand(1);

    std::string equation_str;
    std::string problem_path;
    std::string spec_path;
    std::string algo_str = "derlpso";
    std::string out_dir;
    std::string config_path;
    int points = 10;
    int trials_simulate = 1;
    std::uint64_t seed = 1;
    std::optional<int> max_iterations;
    std::optional<int> trials_bench;
    std::optional<int> jobs;

    CLI::App* simulate = app.add_subcommand("simulate", "Generate benchmark problem files");
    simulate->add_option("--equation", equation_str, "Equation id (e.g. lotka-volterra)")
        ->required();
    simulate->add_option("--points", points, "Time points (ODE) or grid points per axis (PDE)");
    simulate->add_option("--trials", trials_simulate, "Number of problems to generate");
    simulate->add_option("--seed", seed, "Seed base; trial k uses seed+k");
    simulate->add_option("--out", out_dir, "Output directory (default $DERLPSO_OUT_DIR or .)");
    simulate->add_option("--config", config_path, "JSON config overriding the defaults");

    CLI::App* estimate = app.add_subcommand("estimate", "Estimate parameters for a problem file");
    estimate->add_option("--problem", problem_path, "Problem JSON file")->required();
    estimate->add_option("--algo", algo_str, "derlpso or rllpso");
    estimate->add_option("--seed", seed, "Estimation seed");
    estimate->add_option("--max-iterations", max_iterations, "Iteration budget override");
    estimate->add_option("--out", out_dir, "Output directory (default $DERLPSO_OUT_DIR or .)");
    estimate->add_option("--config", config_path, "JSON config overriding the defaults");

    CLI::App* benchmark = app.add_subcommand("benchmark", "Run a benchmark matrix");
    benchmark->add_option("--spec", spec_path, "Benchmark spec JSON file")->required();
    benchmark->add_option("--trials", trials_bench, "Trial count override");
    benchmark->add_option("--jobs", jobs, "Worker threads for trials");
    benchmark->add_option("--out", out_dir, "Output directory override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed())
            return cmd_simulate(equation_str, points, trials_simulate, seed, out_dir,
                                config_path);
        if (estimate->parsed())
            return cmd_estimate(problem_path, algo_str, seed, max_iterations, out_dir,
                                config_path);
        return cmd_benchmark(spec_path, trials_bench, jobs, out_dir);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAllFailed;
    }
}
