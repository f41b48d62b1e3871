#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "derlpso/problem.hpp"
#include "derlpso/qlearning.hpp"
#include "derlpso/swarm.hpp"

namespace derlpso {

enum class Algorithm { Derlpso, Rllpso };

std::string_view algorithm_id(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view id);

/// Everything a single estimation run needs besides the problem.
struct RunConfig {
    SwarmConfig swarm;
    RLConfig rl;
    IntegratorConfig integrator;
    std::vector<int> level_candidates = {4, 6, 8, 10};

    void validate() const;
};

/// Benchmark defaults: dim and iteration budget filled in per equation.
RunConfig default_run_config(Equation equation);

struct EstimationResult {
    std::vector<double> best_params;
    double best_loss = kUnevaluatedLoss;
    std::vector<double> loss_curve;   // global best after each iteration
    std::vector<int> level_choices;   // level count chosen each iteration
    int iterations_used = 0;
    std::uint64_t seed = 0;
    bool reinit_triggered = false;
    std::vector<int> q_candidates;  // final Q-table snapshot for diagnostics
    std::vector<double> q_values;
};

/// Level-structured swarm optimization with Q-learning level control.
/// The DERLPSO variant initializes half the swarm logarithmically, sweeps
/// bottom-up, and reinitializes at the iteration midpoint while the global
/// best is still above the threshold; the RLLPSO baseline initializes
/// everything uniformly, sweeps top-down, and never reinitializes.
class LevelSwarmOptimizer {
public:
    LevelSwarmOptimizer(const Problem& problem, RunConfig config, Algorithm algorithm,
                        std::uint64_t seed);

    /// Draws the initial swarm without evaluating it. run() calls this on
    /// demand; calling it beforehand allows seeding the swarm by hand.
    void initialize();

    LeveledSwarm& swarm() { return swarm_; }
    const QTable& qtable() const { return qtable_; }

    EstimationResult run();

private:
    void evaluate_unscored();

    const Problem& problem_;
    RunConfig config_;
    Algorithm algorithm_;
    std::uint64_t seed_;
    Rng rng_;
    QTable qtable_;
    LeveledSwarm swarm_;
    bool initialized_ = false;
};

EstimationResult run_derlpso(const Problem& problem, const RunConfig& config,
                             std::uint64_t seed);
EstimationResult run_rllpso(const Problem& problem, const RunConfig& config, std::uint64_t seed);
EstimationResult run_estimation(const Problem& problem, const RunConfig& config,
                                Algorithm algorithm, std::uint64_t seed);

}  // namespace derlpso
