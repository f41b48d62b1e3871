#include "derlpso/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace derlpso {

void RLConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in [0,1]");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw std::invalid_argument("learning_rate must be in (0,1]");
    if (!(discount >= 0.0 && discount <= 1.0))
        throw std::invalid_argument("discount must be in [0,1]");
}

QTable::QTable(std::vector<int> candidate_levels) : candidates_(std::move(candidate_levels)) {
    if (candidates_.empty()) throw std::invalid_argument("need at least one candidate level");
    for (int c : candidates_) {
        if (c < 1) throw std::invalid_argument("candidate level counts must be positive");
    }
    values_.assign(candidates_.size() * candidates_.size(), 0.0);
}

double QTable::value(int state, int action) const {
    return values_[static_cast<size_t>(state) * candidates_.size() + static_cast<size_t>(action)];
}

void QTable::set_value(int state, int action, double q) {
    values_[static_cast<size_t>(state) * candidates_.size() + static_cast<size_t>(action)] = q;
}

int QTable::argmax_action(int state) const {
    const double* row = values_.data() + static_cast<size_t>(state) * candidates_.size();
    int best = 0;
    for (int j = 1; j < size(); ++j) {
        if (row[j] > row[best]) best = j;
    }
    return best;
}

int QTable::select_action(const RLConfig& config, Rng& rng) const {
    if (uniform01(rng) < config.epsilon) return argmax_action(state_);
    return static_cast<int>(uniform_index(rng, candidates_.size()));
}

void QTable::update(int state, int action, double reward, const RLConfig& config) {
    const double* next_row = values_.data() + static_cast<size_t>(action) * candidates_.size();
    double next_best = next_row[0];
    for (int k = 1; k < size(); ++k) next_best = std::max(next_best, next_row[k]);
    double& q = values_[static_cast<size_t>(state) * candidates_.size() + static_cast<size_t>(action)];
    q += config.learning_rate * (reward + config.discount * next_best - q);
    state_ = action;
}

double compute_reward(double loss_current, double loss_previous) {
    if (std::isinf(loss_current) || std::isinf(loss_previous)) return 0.0;
    return std::fabs(loss_current - loss_previous) / std::max(loss_current, 1e-10);
}

}  // namespace derlpso
