#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "derlpso/rng.hpp"

namespace derlpso {

/// Loss sentinel for unevaluated particles and failed forward solves.
inline constexpr double kUnevaluatedLoss = std::numeric_limits<double>::infinity();

/// One candidate parameter vector with its per-iteration displacement.
struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    double loss = kUnevaluatedLoss;
};

struct SwarmConfig {
    int population = 100;
    int dim = 1;
    double lower = -10.0;   // uniform init bounds
    double upper = 10.0;
    double beta_min = 1e-10;  // logarithmic init bounds (absolute value)
    double beta_max = 10.0;
    double phi = 0.4;  // weight of the second (higher-loss) exemplar
    int max_iterations = 100;
    double reinit_threshold = 1e-4;
    std::optional<double> early_stop_loss;  // disabled by default

    /// Throws std::invalid_argument on bad ranges or if the population is
    /// too small for the largest candidate level count (every level must
    /// hold at least two particles).
    void validate(int max_level_count) const;
};

/// Population sorted ascending by loss and partitioned into levels.
/// Level ids are 1-based; level 1 holds the best particles.
struct LeveledSwarm {
    std::vector<Particle> particles;
    std::vector<int> level_counts;
    Particle gbest;  // lowest loss ever observed; loss stays +inf until the first evaluation
    double gbest_prev_loss = kUnevaluatedLoss;

    int population() const { return static_cast<int>(particles.size()); }
    int level_count() const { return static_cast<int>(level_counts.size()); }

    /// Half-open index range [first, last) of a 1-based level id.
    std::pair<int, int> level_range(int level_id) const;

    /// Copies the best current particle into gbest if it improves on it.
    void update_gbest();
};

/// Uniform initialization: every component of position and velocity drawn
/// independently from [lower, upper).
void init_uniform(int dim, double lower, double upper, Rng& rng, std::vector<double>& position,
                  std::vector<double>& velocity);

/// Logarithmic initialization: each component is
/// exp(ln(beta_min) + ln(beta_max/beta_min)*u) * s with u ~ U[0,1) and a
/// random sign s, so |component| lands log-uniformly in [beta_min, beta_max).
void init_logarithmic(int dim, double beta_min, double beta_max, Rng& rng,
                      std::vector<double>& position, std::vector<double>& velocity);

/// floor(N/2) uniform particles followed by the logarithmic remainder,
/// all losses unevaluated.
LeveledSwarm init_swarm(const SwarmConfig& config, Rng& rng);

/// All particles uniform-initialized (the baseline swarm without the
/// logarithmic half).
LeveledSwarm init_swarm_uniform(const SwarmConfig& config, Rng& rng);

/// Level sizes: the first L-1 levels hold floor(N/L) particles, the last
/// takes the remainder. Throws std::invalid_argument unless 1 <= L <= N.
std::vector<int> partition_levels(int population, int levels);

/// Stable-sorts particles ascending by loss (unevaluated +inf sinks last,
/// ties keep their order) and assigns level counts for `levels` levels.
void sort_and_assign(LeveledSwarm& swarm, int levels);

/// Probability of the level-competition draw at the given iteration:
/// (cur_iter / max_iter)^2.
double competition_probability(int cur_iter, int max_iter);

/// Picks two exemplar levels for a particle in `current_level` (>= 3).
/// Each of the two draws independently triggers a competition (take the
/// better of two random levels) with the probability above, otherwise draws
/// one level uniformly from [1, current_level-1]. The returned pair is
/// ordered so first <= second.
std::pair<int, int> select_sample_levels(int current_level, int cur_iter, int max_iter,
                                         Rng& rng);

/// Two ordered member indices within a loss-sorted level of `level_size`
/// (>= 2): first uniform in [0, size-2], second uniform in [first+1, size-1].
std::pair<int, int> select_particles_same_level(int level_size, Rng& rng);

/// Velocity/position update with explicit draws:
///   v' = omega*v + r1*(x1 - x) + phi*r2*(x2 - x)   (per dimension)
///   x' = x + v'
/// Marks the particle unevaluated. No clamping.
void apply_velocity_update(Particle& particle, std::span<const double> exemplar1,
                           std::span<const double> exemplar2, double phi, double omega,
                           double r1, double r2);

/// Draws omega, r1 and r2 once per particle, then applies the update.
/// Scalar r1/r2 keep the move inside the span of the two exemplar
/// directions, which is what lets the swarm contract onto narrow valleys.
void update_particle(Particle& particle, const Particle& exemplar1, const Particle& exemplar2,
                     double phi, Rng& rng);

enum class SweepOrder {
    BottomUp,  // levels L..3, then level 2
    TopDown    // level 2, then levels 3..L
};

/// One update sweep over all levels except level 1. Particles in levels >= 3
/// pick exemplar levels via select_sample_levels (one random member from each
/// level; the ordered same-level pair when both draws land on one level).
/// Level 2 always learns from an ordered pair out of level 1.
void level_sweep(LeveledSwarm& swarm, int cur_iter, int max_iter, double phi, SweepOrder order,
                 Rng& rng);

/// Redraws every particle with the logarithmic strategy and marks all losses
/// unevaluated. The gbest record is kept.
void reinitialize(LeveledSwarm& swarm, const SwarmConfig& config, Rng& rng);

}  // namespace derlpso
