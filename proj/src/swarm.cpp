#include "derlpso/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace derlpso {

void SwarmConfig::validate(int max_level_count) const {
    if (population < 2) throw std::invalid_argument("population must be >= 2");
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(lower < upper)) throw std::invalid_argument("uniform bounds need lower < upper");
    if (!(beta_min > 0.0)) throw std::invalid_argument("beta_min must be > 0");
    if (!(beta_min < beta_max)) throw std::invalid_argument("need beta_min < beta_max");
    if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must be in (0,1]");
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
    if (!(reinit_threshold > 0.0)) throw std::invalid_argument("reinit_threshold must be > 0");
    if (early_stop_loss && *early_stop_loss < 0.0)
        throw std::invalid_argument("early_stop_loss must be >= 0");
    if (max_level_count > 0 && population < 2 * max_level_count)
        throw std::invalid_argument("population must be >= 2x the largest level count (" +
                                    std::to_string(max_level_count) +
                                    ") so every level holds at least two particles");
}

std::pair<int, int> LeveledSwarm::level_range(int level_id) const {
    int first = 0;
    for (int i = 0; i + 1 < level_id; ++i) first += level_counts[static_cast<size_t>(i)];
    return {first, first + level_counts[static_cast<size_t>(level_id - 1)]};
}

void LeveledSwarm::update_gbest() {
    for (const Particle& p : particles) {
        if (p.loss < gbest.loss) gbest = p;
    }
}

void init_uniform(int dim, double lower, double upper, Rng& rng, std::vector<double>& position,
                  std::vector<double>& velocity) {
    position.resize(static_cast<size_t>(dim));
    velocity.resize(static_cast<size_t>(dim));
    for (double& x : position) x = uniform_in(rng, lower, upper);
    for (double& v : velocity) v = uniform_in(rng, lower, upper);
}

namespace {

double log_uniform_signed(Rng& rng, double log_min, double log_span) {
    const double magnitude = std::exp(log_min + log_span * uniform01(rng));
    return magnitude * uniform_sign(rng);
}

}  // namespace

void init_logarithmic(int dim, double beta_min, double beta_max, Rng& rng,
                      std::vector<double>& position, std::vector<double>& velocity) {
    const double log_min = std::log(beta_min);
    const double log_span = std::log(beta_max / beta_min);
    position.resize(static_cast<size_t>(dim));
    velocity.resize(static_cast<size_t>(dim));
    for (double& x : position) x = log_uniform_signed(rng, log_min, log_span);
    for (double& v : velocity) v = log_uniform_signed(rng, log_min, log_span);
}

LeveledSwarm init_swarm(const SwarmConfig& config, Rng& rng) {
    LeveledSwarm swarm;
    swarm.particles.resize(static_cast<size_t>(config.population));
    const int uniform_count = config.population / 2;
    for (int i = 0; i < config.population; ++i) {
        Particle& p = swarm.particles[static_cast<size_t>(i)];
        if (i < uniform_count) {
            init_uniform(config.dim, config.lower, config.upper, rng, p.position, p.velocity);
        } else {
            init_logarithmic(config.dim, config.beta_min, config.beta_max, rng, p.position,
                             p.velocity);
        }
        p.loss = kUnevaluatedLoss;
    }
    return swarm;
}

LeveledSwarm init_swarm_uniform(const SwarmConfig& config, Rng& rng) {
    LeveledSwarm swarm;
    swarm.particles.resize(static_cast<size_t>(config.population));
    for (Particle& p : swarm.particles) {
        init_uniform(config.dim, config.lower, config.upper, rng, p.position, p.velocity);
        p.loss = kUnevaluatedLoss;
    }
    return swarm;
}

std::vector<int> partition_levels(int population, int levels) {
    if (levels < 1 || levels > population)
        throw std::invalid_argument("level count must satisfy 1 <= L <= N");
    const int base = population / levels;
    std::vector<int> counts(static_cast<size_t>(levels), base);
    counts.back() = base + population % levels;
    return counts;
}

void sort_and_assign(LeveledSwarm& swarm, int levels) {
    std::stable_sort(swarm.particles.begin(), swarm.particles.end(),
                     [](const Particle& a, const Particle& b) { return a.loss < b.loss; });
    swarm.level_counts = partition_levels(swarm.population(), levels);
}

double competition_probability(int cur_iter, int max_iter) {
    const double ratio = static_cast<double>(cur_iter) / static_cast<double>(max_iter);
    return ratio * ratio;
}

namespace {

int draw_level_above(int current_level, double p, Rng& rng) {
    const auto bound = static_cast<std::size_t>(current_level - 1);
    if (uniform01(rng) < p) {
        const int a = static_cast<int>(uniform_index(rng, bound)) + 1;
        const int b = static_cast<int>(uniform_index(rng, bound)) + 1;
        return std::min(a, b);
    }
    return static_cast<int>(uniform_index(rng, bound)) + 1;
}

}  // namespace

std::pair<int, int> select_sample_levels(int current_level, int cur_iter, int max_iter,
                                         Rng& rng) {
    const double p = competition_probability(cur_iter, max_iter);
    int first = draw_level_above(current_level, p, rng);
    int second = draw_level_above(current_level, p, rng);
    if (first > second) std::swap(first, second);
    return {first, second};
}

std::pair<int, int> select_particles_same_level(int level_size, Rng& rng) {
    const int first = static_cast<int>(uniform_index(rng, static_cast<size_t>(level_size - 1)));
    const int second =
        first + 1 +
        static_cast<int>(uniform_index(rng, static_cast<size_t>(level_size - 1 - first)));
    return {first, second};
}

void apply_velocity_update(Particle& particle, std::span<const double> exemplar1,
                           std::span<const double> exemplar2, double phi, double omega,
                           double r1, double r2) {
    const size_t dim = particle.position.size();
    for (size_t d = 0; d < dim; ++d) {
        const double x = particle.position[d];
        double v = omega * particle.velocity[d];
        v += r1 * (exemplar1[d] - x);
        v += phi * r2 * (exemplar2[d] - x);
        particle.velocity[d] = v;
        particle.position[d] = x + v;
    }
    particle.loss = kUnevaluatedLoss;
}

void update_particle(Particle& particle, const Particle& exemplar1, const Particle& exemplar2,
                     double phi, Rng& rng) {
    const double omega = uniform01(rng);
    const double r1 = uniform01(rng);
    const double r2 = uniform01(rng);
    apply_velocity_update(particle, exemplar1.position, exemplar2.position, phi, omega, r1, r2);
}

namespace {

// Updates every particle of `level` from exemplars in strictly better levels.
void update_level(LeveledSwarm& swarm, int level, int cur_iter, int max_iter, double phi,
                  Rng& rng) {
    const auto [first, last] = swarm.level_range(level);
    for (int j = first; j < last; ++j) {
        const auto [l1, l2] = select_sample_levels(level, cur_iter, max_iter, rng);
        const Particle* exemplar1 = nullptr;
        const Particle* exemplar2 = nullptr;
        if (l1 == l2) {
            const auto [lo, hi] = swarm.level_range(l1);
            const auto [i1, i2] = select_particles_same_level(hi - lo, rng);
            exemplar1 = &swarm.particles[static_cast<size_t>(lo + i1)];
            exemplar2 = &swarm.particles[static_cast<size_t>(lo + i2)];
        } else {
            const auto [lo1, hi1] = swarm.level_range(l1);
            const auto [lo2, hi2] = swarm.level_range(l2);
            exemplar1 = &swarm.particles[lo1 + uniform_index(rng, static_cast<size_t>(hi1 - lo1))];
            exemplar2 = &swarm.particles[lo2 + uniform_index(rng, static_cast<size_t>(hi2 - lo2))];
        }
        update_particle(swarm.particles[static_cast<size_t>(j)], *exemplar1, *exemplar2, phi,
                        rng);
    }
}

void update_level_two(LeveledSwarm& swarm, double phi, Rng& rng) {
    const auto [first, last] = swarm.level_range(2);
    const auto [lo, hi] = swarm.level_range(1);
    for (int j = first; j < last; ++j) {
        const auto [i1, i2] = select_particles_same_level(hi - lo, rng);
        update_particle(swarm.particles[static_cast<size_t>(j)],
                        swarm.particles[static_cast<size_t>(lo + i1)],
                        swarm.particles[static_cast<size_t>(lo + i2)], phi, rng);
    }
}

}  // namespace

void level_sweep(LeveledSwarm& swarm, int cur_iter, int max_iter, double phi, SweepOrder order,
                 Rng& rng) {
    const int levels = swarm.level_count();
    if (order == SweepOrder::BottomUp) {
        // Bottom-up: a level's exemplars live in better levels, which are
        // processed after it, so exemplars still carry their pre-sweep state.
        for (int level = levels; level >= 3; --level) {
            update_level(swarm, level, cur_iter, max_iter, phi, rng);
        }
        if (levels >= 2) update_level_two(swarm, phi, rng);
    } else {
        if (levels >= 2) update_level_two(swarm, phi, rng);
        for (int level = 3; level <= levels; ++level) {
            update_level(swarm, level, cur_iter, max_iter, phi, rng);
        }
    }
}

void reinitialize(LeveledSwarm& swarm, const SwarmConfig& config, Rng& rng) {
    for (Particle& p : swarm.particles) {
        init_logarithmic(config.dim, config.beta_min, config.beta_max, rng, p.position,
                         p.velocity);
        p.loss = kUnevaluatedLoss;
    }
}

}  // namespace derlpso
