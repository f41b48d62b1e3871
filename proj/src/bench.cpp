#include "derlpso/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace derlpso {

void BenchmarkSpec::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (points.empty()) throw std::invalid_argument("points list must not be empty");
    if (algorithms.empty()) throw std::invalid_argument("no algorithm selected");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    config.validate();
}

std::uint64_t problem_seed_for_trial(std::uint64_t seed_base, int trial) {
    return seed_base + static_cast<std::uint64_t>(trial);
}

std::uint64_t estimation_seed_for_trial(std::uint64_t seed_base, int trial) {
    return mix_seed(problem_seed_for_trial(seed_base, trial));
}

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// One (grid size, trial) unit: generate the problem once, then run every
// requested algorithm on it with a shared estimation seed.
void run_unit(const BenchmarkSpec& spec, int point_idx, int trial,
              std::vector<CellResult>& cells) {
    const int points = spec.points[static_cast<std::size_t>(point_idx)];
    const std::uint64_t problem_seed = problem_seed_for_trial(spec.seed_base, trial);
    const std::uint64_t estimation_seed = estimation_seed_for_trial(spec.seed_base, trial);

    RunConfig config = spec.config;
    config.swarm.dim = equation_param_count(spec.equation);
    if (!spec.max_iterations_overridden)
        config.swarm.max_iterations = default_max_iterations(spec.equation);

    std::string generation_error;
    Problem problem;
    bool have_problem = false;
    try {
        problem = generate_problem(spec.equation, points, problem_seed, spec.options.prior_stddev,
                                   config.integrator, spec.options.fhn_constants);
        have_problem = true;
    } catch (const std::exception& e) {
        generation_error = e.what();
    }

    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        CellResult& cell =
            cells[static_cast<std::size_t>(point_idx) * spec.algorithms.size() + a];
        TrialOutcome& outcome = cell.trials[static_cast<std::size_t>(trial)];
        outcome.trial = trial;
        outcome.problem_seed = problem_seed;
        outcome.estimation_seed = estimation_seed;
        if (!have_problem) {
            outcome.ok = false;
            outcome.error = generation_error;
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
            const EstimationResult result =
                run_estimation(problem, config, spec.algorithms[a], estimation_seed);
            outcome.wall_seconds = elapsed_seconds(start);
            outcome.ok = true;
            outcome.true_params = problem.true_params;
            outcome.best_params = result.best_params;
            outcome.best_loss = result.best_loss;
            outcome.iterations_used = result.iterations_used;
            outcome.reinit_triggered = result.reinit_triggered;
            const std::size_t dim = problem.true_params.size();
            outcome.sq_errors.resize(dim, std::numeric_limits<double>::infinity());
            double total = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = result.best_params.size() == dim
                                        ? result.best_params[d] - problem.true_params[d]
                                        : std::numeric_limits<double>::infinity();
                outcome.sq_errors[d] = diff * diff;
                total += outcome.sq_errors[d];
            }
            outcome.aggregate_mse = total / static_cast<double>(dim);
        } catch (const std::exception& e) {
            outcome.wall_seconds = elapsed_seconds(start);
            outcome.ok = false;
            outcome.error = e.what();
        }
    }
}

}  // namespace

std::vector<CellResult> run_benchmark(const BenchmarkSpec& spec) {
    spec.validate();

    std::vector<CellResult> cells;
    cells.reserve(spec.points.size() * spec.algorithms.size());
    for (int p : spec.points) {
        for (Algorithm algo : spec.algorithms) {
            CellResult cell;
            cell.equation = spec.equation;
            cell.points = p;
            cell.algorithm = algo;
            cell.trials.resize(static_cast<std::size_t>(spec.trials));
            cells.push_back(std::move(cell));
        }
    }

    const int total_units = static_cast<int>(spec.points.size()) * spec.trials;
    std::atomic<int> next_unit{0};
    auto worker = [&] {
        for (;;) {
            const int unit = next_unit.fetch_add(1);
            if (unit >= total_units) return;
            run_unit(spec, unit / spec.trials, unit % spec.trials, cells);
        }
    };

    const int thread_count = std::min(spec.jobs, total_units);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (CellResult& cell : cells) {
        cell.wall_seconds = 0.0;
        for (const TrialOutcome& t : cell.trials) cell.wall_seconds += t.wall_seconds;
    }
    return cells;
}

io::SummaryRow summarize_cell(const CellResult& cell) {
    io::SummaryRow row;
    row.equation = std::string(equation_id(cell.equation));
    row.points = cell.points;
    row.algorithm = std::string(algorithm_id(cell.algorithm));
    row.wall_seconds = cell.wall_seconds;

    const std::size_t dim = static_cast<std::size_t>(equation_param_count(cell.equation));
    std::vector<std::vector<double>> per_param(dim);
    std::vector<double> aggregates;
    for (const TrialOutcome& t : cell.trials) {
        if (!t.ok) continue;
        for (std::size_t d = 0; d < dim; ++d) per_param[d].push_back(t.sq_errors[d]);
        aggregates.push_back(t.aggregate_mse);
    }
    row.trials = static_cast<int>(aggregates.size());

    auto mean = [](const std::vector<double>& xs) {
        double total = 0.0;
        for (double x : xs) total += x;
        return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
    };
    auto sample_sd = [&](const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;  // single-sample convention
        const double m = mean(xs);
        double total = 0.0;
        for (double x : xs) total += (x - m) * (x - m);
        return std::sqrt(total / static_cast<double>(xs.size() - 1));
    };

    row.param_mse.resize(dim);
    row.param_sd.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        row.param_mse[d] = mean(per_param[d]);
        row.param_sd[d] = sample_sd(per_param[d]);
    }
    row.mean_mse = mean(aggregates);
    row.sd_mse = sample_sd(aggregates);
    return row;
}

BenchmarkSpec benchmark_spec_from_json(const io::json& j) {
    BenchmarkSpec spec;
    if (!j.contains("equation")) throw std::runtime_error("benchmark spec needs an equation");
    const auto id = j.at("equation").get<std::string>();
    const auto equation = parse_equation(id);
    if (!equation) throw std::runtime_error("unknown equation id: " + id);
    spec.equation = *equation;
    spec.config = default_run_config(spec.equation);

    if (j.contains("points")) spec.points = j.at("points").get<std::vector<int>>();
    spec.trials = j.value("trials", 10);
    spec.seed_base = j.value("seed_base", std::uint64_t{1});
    spec.jobs = j.value("jobs", 1);
    spec.out_dir = j.value("out_dir", std::string{});

    if (j.contains("algorithms")) {
        spec.algorithms.clear();
        const auto& algos = j.at("algorithms");
        auto push = [&spec](const std::string& name) {
            const auto algo = parse_algorithm(name);
            if (!algo) throw std::runtime_error("unknown algorithm id: " + name);
            spec.algorithms.push_back(*algo);
        };
        if (algos.is_string()) {
            const auto name = algos.get<std::string>();
            if (name == "both") {
                spec.algorithms = {Algorithm::Derlpso, Algorithm::Rllpso};
            } else {
                push(name);
            }
        } else {
            for (const auto& entry : algos) push(entry.get<std::string>());
        }
    }

    if (j.contains("config")) {
        io::apply_config(j.at("config"), spec.config, spec.options);
        spec.max_iterations_overridden = j.at("config").contains("max_iterations");
    }
    return spec;
}

io::json benchmark_manifest(const BenchmarkSpec& spec, const std::vector<CellResult>& cells) {
    io::json manifest;
    manifest["version"] = 1;
    io::json spec_json;
    spec_json["equation"] = std::string(equation_id(spec.equation));
    spec_json["points"] = spec.points;
    spec_json["trials"] = spec.trials;
    spec_json["seed_base"] = spec.seed_base;
    spec_json["jobs"] = spec.jobs;
    io::json algos = io::json::array();
    for (Algorithm a : spec.algorithms) algos.push_back(std::string(algorithm_id(a)));
    spec_json["algorithms"] = algos;
    spec_json["prior_std"] = spec.options.prior_stddev;
    spec_json["fhn_constants"] = spec.options.fhn_constants;
    spec_json["max_iterations"] = spec.config.swarm.max_iterations;
    spec_json["max_iterations_overridden"] = spec.max_iterations_overridden;
    manifest["spec"] = spec_json;

    io::json cell_array = io::json::array();
    for (const CellResult& cell : cells) {
        io::json c;
        c["equation"] = std::string(equation_id(cell.equation));
        c["points"] = cell.points;
        c["algorithm"] = std::string(algorithm_id(cell.algorithm));
        c["wall_seconds"] = cell.wall_seconds;
        io::json trials = io::json::array();
        for (const TrialOutcome& t : cell.trials) {
            io::json tj;
            tj["trial"] = t.trial;
            tj["problem_seed"] = t.problem_seed;
            tj["estimation_seed"] = t.estimation_seed;
            tj["ok"] = t.ok;
            if (!t.ok) {
                tj["error"] = t.error;
            } else {
                tj["true_params"] = t.true_params;
                tj["best_params"] = t.best_params;
                tj["sq_errors"] = t.sq_errors;
                tj["aggregate_mse"] = t.aggregate_mse;
                tj["best_loss"] = t.best_loss;
                tj["iterations_used"] = t.iterations_used;
                tj["reinit_triggered"] = t.reinit_triggered;
                tj["wall_seconds"] = t.wall_seconds;
            }
            trials.push_back(std::move(tj));
        }
        c["trials"] = std::move(trials);
        cell_array.push_back(std::move(c));
    }
    manifest["cells"] = std::move(cell_array);
    return manifest;
}

}  // namespace derlpso
