#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "derlpso/estimator.hpp"
#include "derlpso/io.hpp"
#include "derlpso/problem.hpp"

namespace derlpso {

/// One benchmark matrix: equation x grid sizes x algorithms x trials.
struct BenchmarkSpec {
    Equation equation = Equation::LotkaVolterra;
    std::vector<int> points = {10};
    int trials = 10;
    std::uint64_t seed_base = 1;
    std::vector<Algorithm> algorithms = {Algorithm::Derlpso};
    std::string out_dir;
    int jobs = 1;
    RunConfig config;  // dim/max_iterations refreshed per equation unless overridden
    io::HarnessOptions options;
    bool max_iterations_overridden = false;

    void validate() const;
};

struct TrialOutcome {
    int trial = 0;
    std::uint64_t problem_seed = 0;
    std::uint64_t estimation_seed = 0;
    bool ok = false;
    std::string error;
    std::vector<double> true_params;
    std::vector<double> best_params;
    std::vector<double> sq_errors;  // (best - true)^2 per parameter
    double aggregate_mse = 0.0;     // mean of sq_errors
    double best_loss = 0.0;
    int iterations_used = 0;
    bool reinit_triggered = false;
    double wall_seconds = 0.0;
};

struct CellResult {
    Equation equation = Equation::LotkaVolterra;
    int points = 0;
    Algorithm algorithm = Algorithm::Derlpso;
    std::vector<TrialOutcome> trials;
    double wall_seconds = 0.0;  // summed over trials
};

/// Runs the whole matrix. Trials are dispatched over `jobs` worker threads;
/// the two algorithms of a paired run share their problem and estimation
/// seeds. Trial failures are recorded, not thrown.
std::vector<CellResult> run_benchmark(const BenchmarkSpec& spec);

io::SummaryRow summarize_cell(const CellResult& cell);

/// Per-trial seeds: the data-generation stream is seed_base + trial and the
/// estimation stream is its splitmix64 image, keeping the two decorrelated.
std::uint64_t problem_seed_for_trial(std::uint64_t seed_base, int trial);
std::uint64_t estimation_seed_for_trial(std::uint64_t seed_base, int trial);

BenchmarkSpec benchmark_spec_from_json(const io::json& j);
io::json benchmark_manifest(const BenchmarkSpec& spec, const std::vector<CellResult>& cells);

}  // namespace derlpso
