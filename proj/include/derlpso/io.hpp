#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "derlpso/estimator.hpp"
#include "derlpso/problem.hpp"

namespace derlpso::io {

using json = nlohmann::json;

/// Extra generation settings carried alongside a RunConfig.
struct HarnessOptions {
    double prior_stddev = 0.5;
    std::vector<double> fhn_constants = {3.0, 0.0};
};

json problem_to_json(const Problem& problem);

/// Throws std::runtime_error on schema violations (wrong version, unknown
/// equation or initial/boundary tags, shape mismatches).
Problem problem_from_json(const json& j);

json result_to_json(const EstimationResult& result, const Problem& problem,
                    Algorithm algorithm, const RunConfig& config);

/// Applies the recognized keys of a config JSON onto the run configuration:
/// population, lower, upper, beta_min, beta_max, phi, max_iterations,
/// reinit_threshold, early_stop_loss, epsilon, alpha, gamma,
/// level_candidates, rel_tol, abs_tol, max_steps, initial_step, prior_std,
/// fhn_constants. Unknown keys throw std::runtime_error.
void apply_config(const json& j, RunConfig& config, HarnessOptions& options);

/// iteration,gbest_loss rows with a header line.
std::string loss_curve_csv(const EstimationResult& result);

/// One benchmark summary line per (equation, grid, algorithm).
struct SummaryRow {
    std::string equation;
    int points = 0;
    std::string algorithm;
    int trials = 0;
    std::vector<double> param_mse;  // mean squared error per parameter
    std::vector<double> param_sd;   // SD of the squared errors per parameter
    double mean_mse = 0.0;          // mean over trials of the per-trial parameter MSE
    double sd_mse = 0.0;
    double wall_seconds = 0.0;
};

/// Fixed-schema CSV (columns padded to four parameters, blank when absent).
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes via a temp file plus rename so readers never observe partial files.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

/// Round-trip double formatting for CSV cells.
std::string format_double(double v);

}  // namespace derlpso::io
