#include "derlpso/estimator.hpp"

#include <algorithm>
#include <stdexcept>

namespace derlpso {

std::string_view algorithm_id(Algorithm algo) {
    return algo == Algorithm::Derlpso ? "derlpso" : "rllpso";
}

std::optional<Algorithm> parse_algorithm(std::string_view id) {
    if (id == "derlpso") return Algorithm::Derlpso;
    if (id == "rllpso") return Algorithm::Rllpso;
    return std::nullopt;
}

void RunConfig::validate() const {
    if (level_candidates.empty())
        throw std::invalid_argument("need at least one candidate level count");
    int max_levels = 0;
    for (int c : level_candidates) {
        if (c < 1) throw std::invalid_argument("candidate level counts must be positive");
        max_levels = std::max(max_levels, c);
    }
    swarm.validate(max_levels);
    rl.validate();
    if (!(integrator.rel_tol > 0.0) || !(integrator.abs_tol > 0.0))
        throw std::invalid_argument("integrator tolerances must be positive");
    if (integrator.max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

RunConfig default_run_config(Equation equation) {
    RunConfig config;
    config.swarm.dim = equation_param_count(equation);
    config.swarm.max_iterations = default_max_iterations(equation);
    return config;
}

LevelSwarmOptimizer::LevelSwarmOptimizer(const Problem& problem, RunConfig config,
                                         Algorithm algorithm, std::uint64_t seed)
    : problem_(problem),
      config_(std::move(config)),
      algorithm_(algorithm),
      seed_(seed),
      rng_(seed),
      qtable_(config_.level_candidates) {
    config_.validate();
    if (config_.swarm.dim != equation_param_count(problem.equation))
        throw std::invalid_argument("swarm dimension does not match the equation");
}

void LevelSwarmOptimizer::initialize() {
    swarm_ = algorithm_ == Algorithm::Derlpso ? init_swarm(config_.swarm, rng_)
                                              : init_swarm_uniform(config_.swarm, rng_);
    initialized_ = true;
}

void LevelSwarmOptimizer::evaluate_unscored() {
    for (Particle& p : swarm_.particles) {
        if (p.loss == kUnevaluatedLoss) {
            p.loss = evaluate_loss(problem_, p.position, config_.integrator);
        }
    }
}

EstimationResult LevelSwarmOptimizer::run() {
    if (!initialized_) initialize();

    EstimationResult result;
    result.seed = seed_;

    evaluate_unscored();
    swarm_.update_gbest();

    const int max_iter = config_.swarm.max_iterations;
    double prev_loss = swarm_.gbest.loss;  // baseline for the first reward

    for (int iter = 0; iter < max_iter; ++iter) {
        swarm_.gbest_prev_loss = prev_loss;

        const int action = qtable_.select_action(config_.rl, rng_);
        const int levels = qtable_.candidate_levels()[static_cast<size_t>(action)];
        sort_and_assign(swarm_, levels);
        level_sweep(swarm_, iter, max_iter, config_.swarm.phi,
                    algorithm_ == Algorithm::Derlpso ? SweepOrder::BottomUp
                                                     : SweepOrder::TopDown,
                    rng_);
        evaluate_unscored();
        swarm_.update_gbest();

        const double reward = compute_reward(swarm_.gbest.loss, prev_loss);
        qtable_.update(qtable_.current_state(), action, reward, config_.rl);

        if (algorithm_ == Algorithm::Derlpso && iter == max_iter / 2 &&
            swarm_.gbest.loss > config_.swarm.reinit_threshold) {
            reinitialize(swarm_, config_.swarm, rng_);
            evaluate_unscored();
            swarm_.update_gbest();
            result.reinit_triggered = true;
        }

        prev_loss = swarm_.gbest.loss;
        result.loss_curve.push_back(swarm_.gbest.loss);
        result.level_choices.push_back(levels);

        if (config_.swarm.early_stop_loss &&
            swarm_.gbest.loss <= *config_.swarm.early_stop_loss) {
            break;
        }
    }

    result.iterations_used = static_cast<int>(result.loss_curve.size());
    result.best_params = swarm_.gbest.position;
    result.best_loss = swarm_.gbest.loss;
    result.q_candidates = qtable_.candidate_levels();
    result.q_values = qtable_.values();
    return result;
}

EstimationResult run_estimation(const Problem& problem, const RunConfig& config,
                                Algorithm algorithm, std::uint64_t seed) {
    LevelSwarmOptimizer optimizer(problem, config, algorithm, seed);
    return optimizer.run();
}

EstimationResult run_derlpso(const Problem& problem, const RunConfig& config,
                             std::uint64_t seed) {
    return run_estimation(problem, config, Algorithm::Derlpso, seed);
}

EstimationResult run_rllpso(const Problem& problem, const RunConfig& config,
                            std::uint64_t seed) {
    return run_estimation(problem, config, Algorithm::Rllpso, seed);
}

}  // namespace derlpso
