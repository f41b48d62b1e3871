#pragma once

#include <vector>

#include "derlpso/rng.hpp"

namespace derlpso {

struct RLConfig {
    double epsilon = 0.9;        // probability of exploiting the argmax action
    double learning_rate = 0.4;  // alpha in the Q update
    double discount = 0.8;       // gamma in the Q update

    void validate() const;  // throws std::invalid_argument on out-of-range values
};

/// State-action values over candidate level counts. State and action are both
/// indices into `candidate_levels`; Q(i, j) scores switching from level count
/// i to level count j.
class QTable {
public:
    explicit QTable(std::vector<int> candidate_levels);

    int size() const { return static_cast<int>(candidates_.size()); }
    const std::vector<int>& candidate_levels() const { return candidates_; }
    int current_state() const { return state_; }
    void set_state(int state) { state_ = state; }
    double value(int state, int action) const;
    void set_value(int state, int action, double q);
    const std::vector<double>& values() const { return values_; }

    /// Highest-valued action in a state, lowest index on ties.
    int argmax_action(int state) const;

    /// Epsilon-greedy pick: argmax with probability epsilon, else uniform.
    int select_action(const RLConfig& config, Rng& rng) const;

    /// Q(i,j) += alpha * (r + gamma * max_k Q(j,k) - Q(i,j)), then the
    /// current state becomes j.
    void update(int state, int action, double reward, const RLConfig& config);

private:
    std::vector<int> candidates_;
    std::vector<double> values_;  // row-major size x size
    int state_ = 0;
};

/// Normalized improvement of the global-best loss,
/// |current - previous| / max(current, 1e-10). Infinite inputs (no finite
/// evaluation yet) yield 0.
double compute_reward(double loss_current, double loss_previous);

}  // namespace derlpso
