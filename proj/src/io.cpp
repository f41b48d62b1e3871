#include "derlpso/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace derlpso::io {

namespace {

json grid_to_json(const Problem& problem) {
    json grid;
    switch (problem.equation) {
        case Equation::LotkaVolterra:
        case Equation::Lorenz:
        case Equation::FitzHughNagumo:
            grid["kind"] = "time";
            grid["t_start"] = problem.time_grid.t_start;
            grid["t_end"] = problem.time_grid.t_end;
            grid["points"] = problem.time_grid.points;
            break;
        case Equation::Heat:
        case Equation::ConvectionDiffusion:
            grid["kind"] = "space-time";
            grid["x_points"] = problem.grid1d.x_points;
            grid["t_points"] = problem.grid1d.t_points;
            break;
        case Equation::Helmholtz:
            grid["kind"] = "plane";
            grid["x_points"] = problem.grid2d.x_points;
            grid["y_points"] = problem.grid2d.y_points;
            break;
    }
    return grid;
}

const char* initial_tag(Equation equation) {
    switch (equation) {
        case Equation::Heat:
            return "sin-pi-x";
        case Equation::ConvectionDiffusion:
            return "gaussian-pulse-0.3";
        default:
            return "";
    }
}

const char* boundary_tag(Equation equation) {
    switch (equation) {
        case Equation::Heat:
        case Equation::ConvectionDiffusion:
            return "dirichlet-zero";
        case Equation::Helmholtz:
            return "manufactured-sine";
        default:
            return "";
    }
}

}  // namespace

json problem_to_json(const Problem& problem) {
    json j;
    j["version"] = 1;
    j["equation"] = std::string(equation_id(problem.equation));
    j["seed"] = problem.seed;
    j["redraws"] = problem.redraws;
    j["grid"] = grid_to_json(problem);
    if (is_ode(problem.equation)) {
        j["initial_state"] = problem.initial_state;
        if (problem.equation == Equation::FitzHughNagumo)
            j["fixed_constants"] = problem.fixed_constants;
    } else {
        if (problem.equation != Equation::Helmholtz)
            j["initial_condition"] = initial_tag(problem.equation);
        j["boundary"] = boundary_tag(problem.equation);
    }
    j["true_params"] = problem.true_params;
    j["observed"] = {{"rows", problem.observed.rows},
                     {"cols", problem.observed.cols},
                     {"data", problem.observed.data}};
    return j;
}

Problem problem_from_json(const json& j) {
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw std::runtime_error("unsupported problem file version");
    const auto id = j.at("equation").get<std::string>();
    const auto equation = parse_equation(id);
    if (!equation) throw std::runtime_error("unknown equation id: " + id);

    Problem problem;
    problem.equation = *equation;
    problem.seed = j.value("seed", std::uint64_t{0});
    problem.redraws = j.value("redraws", 0);

    const json& grid = j.at("grid");
    if (is_ode(problem.equation)) {
        problem.time_grid.t_start = grid.at("t_start").get<double>();
        problem.time_grid.t_end = grid.at("t_end").get<double>();
        problem.time_grid.points = grid.at("points").get<int>();
        if (problem.time_grid.points < 2 ||
            !(problem.time_grid.t_start < problem.time_grid.t_end))
            throw std::runtime_error("invalid time grid");
        problem.initial_state = j.at("initial_state").get<std::vector<double>>();
        const auto dim = static_cast<std::size_t>(ode_state_dim(
            problem.equation == Equation::LotkaVolterra ? OdeKind::LotkaVolterra
            : problem.equation == Equation::Lorenz      ? OdeKind::Lorenz
                                                        : OdeKind::FitzHughNagumo));
        if (problem.initial_state.size() != dim)
            throw std::runtime_error("initial_state has the wrong dimension");
        if (problem.equation == Equation::FitzHughNagumo) {
            problem.fixed_constants = j.at("fixed_constants").get<std::vector<double>>();
            if (problem.fixed_constants.size() != 2 || problem.fixed_constants[0] == 0.0)
                throw std::runtime_error("fixed_constants must be [gamma, xi], gamma != 0");
        }
    } else {
        if (problem.equation == Equation::Helmholtz) {
            problem.grid2d.x_points = grid.at("x_points").get<int>();
            problem.grid2d.y_points = grid.at("y_points").get<int>();
            if (problem.grid2d.x_points < 3 || problem.grid2d.y_points < 3)
                throw std::runtime_error("invalid plane grid");
        } else {
            problem.grid1d.x_points = grid.at("x_points").get<int>();
            problem.grid1d.t_points = grid.at("t_points").get<int>();
            if (problem.grid1d.x_points < 3 || problem.grid1d.t_points < 2)
                throw std::runtime_error("invalid space-time grid");
        }
        if (problem.equation != Equation::Helmholtz) {
            const auto tag = j.at("initial_condition").get<std::string>();
            if (tag != initial_tag(problem.equation))
                throw std::runtime_error("unknown initial_condition tag: " + tag);
        }
        const auto boundary = j.at("boundary").get<std::string>();
        if (boundary != boundary_tag(problem.equation))
            throw std::runtime_error("unknown boundary tag: " + boundary);
    }

    problem.true_params = j.at("true_params").get<std::vector<double>>();
    if (problem.true_params.size() !=
        static_cast<std::size_t>(equation_param_count(problem.equation)))
        throw std::runtime_error("true_params has the wrong dimension");

    const json& observed = j.at("observed");
    problem.observed.rows = observed.at("rows").get<std::size_t>();
    problem.observed.cols = observed.at("cols").get<std::size_t>();
    problem.observed.data = observed.at("data").get<std::vector<double>>();
    if (problem.observed.data.size() != problem.observed.rows * problem.observed.cols)
        throw std::runtime_error("observed data does not match its shape");
    return problem;
}

json result_to_json(const EstimationResult& result, const Problem& problem,
                    Algorithm algorithm, const RunConfig& config) {
    json j;
    j["version"] = 1;
    j["equation"] = std::string(equation_id(problem.equation));
    j["algorithm"] = std::string(algorithm_id(algorithm));
    j["seed"] = result.seed;
    j["best_params"] = result.best_params;
    j["best_loss"] = result.best_loss;
    j["iterations_used"] = result.iterations_used;
    j["loss_curve"] = result.loss_curve;
    j["level_choices"] = result.level_choices;
    j["reinit_triggered"] = result.reinit_triggered;
    j["q_table"] = {{"candidate_levels", result.q_candidates}, {"values", result.q_values}};
    json echo;
    echo["population"] = config.swarm.population;
    echo["dim"] = config.swarm.dim;
    echo["lower"] = config.swarm.lower;
    echo["upper"] = config.swarm.upper;
    echo["beta_min"] = config.swarm.beta_min;
    echo["beta_max"] = config.swarm.beta_max;
    echo["phi"] = config.swarm.phi;
    echo["max_iterations"] = config.swarm.max_iterations;
    echo["reinit_threshold"] = config.swarm.reinit_threshold;
    if (config.swarm.early_stop_loss)
        echo["early_stop_loss"] = *config.swarm.early_stop_loss;
    echo["epsilon"] = config.rl.epsilon;
    echo["alpha"] = config.rl.learning_rate;
    echo["gamma"] = config.rl.discount;
    echo["level_candidates"] = config.level_candidates;
    echo["rel_tol"] = config.integrator.rel_tol;
    echo["abs_tol"] = config.integrator.abs_tol;
    echo["max_steps"] = config.integrator.max_steps;
    j["config_echo"] = echo;
    return j;
}

void apply_config(const json& j, RunConfig& config, HarnessOptions& options) {
    for (const auto& [key, value] : j.items()) {
        if (key == "population") {
            config.swarm.population = value.get<int>();
        } else if (key == "lower") {
            config.swarm.lower = value.get<double>();
        } else if (key == "upper") {
            config.swarm.upper = value.get<double>();
        } else if (key == "beta_min") {
            config.swarm.beta_min = value.get<double>();
        } else if (key == "beta_max") {
            config.swarm.beta_max = value.get<double>();
        } else if (key == "phi") {
            config.swarm.phi = value.get<double>();
        } else if (key == "max_iterations") {
            config.swarm.max_iterations = value.get<int>();
        } else if (key == "reinit_threshold") {
            config.swarm.reinit_threshold = value.get<double>();
        } else if (key == "early_stop_loss") {
            if (value.is_null())
                config.swarm.early_stop_loss.reset();
            else
                config.swarm.early_stop_loss = value.get<double>();
        } else if (key == "epsilon") {
            config.rl.epsilon = value.get<double>();
        } else if (key == "alpha") {
            config.rl.learning_rate = value.get<double>();
        } else if (key == "gamma") {
            config.rl.discount = value.get<double>();
        } else if (key == "level_candidates") {
            config.level_candidates = value.get<std::vector<int>>();
        } else if (key == "rel_tol") {
            config.integrator.rel_tol = value.get<double>();
        } else if (key == "abs_tol") {
            config.integrator.abs_tol = value.get<double>();
        } else if (key == "max_steps") {
            config.integrator.max_steps = value.get<int>();
        } else if (key == "initial_step") {
            config.integrator.initial_step = value.is_null() ? 0.0 : value.get<double>();
        } else if (key == "prior_std") {
            options.prior_stddev = value.get<double>();
            if (!(options.prior_stddev > 0.0))
                throw std::runtime_error("prior_std must be positive");
        } else if (key == "fhn_constants") {
            options.fhn_constants = value.get<std::vector<double>>();
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::string format_double(double v) {
    char buf[40];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);  // shortest form that round-trips
}

std::string loss_curve_csv(const EstimationResult& result) {
    std::string csv = "iteration,gbest_loss\n";
    for (std::size_t i = 0; i < result.loss_curve.size(); ++i) {
        csv += std::to_string(i);
        csv += ',';
        csv += format_double(result.loss_curve[i]);
        csv += '\n';
    }
    return csv;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    constexpr int kMaxParams = 4;
    std::string csv = "equation,points,algorithm,trials";
    for (int p = 1; p <= kMaxParams; ++p) {
        csv += ",p" + std::to_string(p) + "_mse,p" + std::to_string(p) + "_sd";
    }
    csv += ",mean_mse,sd_mse,wall_seconds\n";
    for (const SummaryRow& row : rows) {
        csv += row.equation + ',' + std::to_string(row.points) + ',' + row.algorithm + ',' +
               std::to_string(row.trials);
        for (int p = 0; p < kMaxParams; ++p) {
            if (p < static_cast<int>(row.param_mse.size())) {
                csv += ',' + format_double(row.param_mse[static_cast<std::size_t>(p)]);
                csv += ',' + format_double(row.param_sd[static_cast<std::size_t>(p)]);
            } else {
                csv += ",,";
            }
        }
        csv += ',' + format_double(row.mean_mse);
        csv += ',' + format_double(row.sd_mse);
        csv += ',' + format_double(row.wall_seconds);
        csv += '\n';
    }
    return csv;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace derlpso::io
