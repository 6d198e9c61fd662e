#include "segment/optimizer.hpp"

#include "segment/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace segment {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::WMRA: return "WMRA";
        case Algorithm::MRA: return "MRA";
        case Algorithm::WOA: return "WOA";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "WMRA") return Algorithm::WMRA;
    if (upper == "MRA") return Algorithm::MRA;
    if (upper == "WOA") return Algorithm::WOA;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
    if (population < 2) throw ConfigError("population must be at least 2");
    if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
    if (dim < 1) throw ConfigError("dim must be at least 1");
    if (!(lb < ub)) throw ConfigError("lower bound must be below upper bound");
    if (!(v_fraction > 0.0 && v_fraction <= 1.0)) throw ConfigError("v_fraction must lie in (0, 1]");
}

double coefficient_a(int it, int max_iters) {
    return 2.0 * (1.0 - static_cast<double>(it) / static_cast<double>(max_iters));
}

std::vector<double> coefficient_K(double a, std::span<const double> r) {
    std::vector<double> K(r.size());
    for (std::size_t d = 0; d < r.size(); ++d) K[d] = 2.0 * a * r[d] - a;
    return K;
}

std::vector<double> coefficient_K(double a, int dim, Rng& rng) {
    std::vector<double> K(static_cast<std::size_t>(dim));
    for (auto& k : K) k = 2.0 * a * rng.uniform() - a;
    return K;
}

double gate_magnitude(std::span<const double> K) {
    if (K.empty()) return 0.0;
    double sq = 0.0;
    for (double k : K) sq += k * k;
    return std::sqrt(sq / static_cast<double>(K.size()));
}

void explore_move(Agent& agent, std::span<const double> velocity, Bounds bounds) {
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        agent.velocity[d] = velocity[d];
        agent.position[d] = bounds.clamp(agent.position[d] + velocity[d]);
    }
}

void explore_move(Agent& agent, Rng& rng, double vmin, double vmax, Bounds bounds) {
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        agent.velocity[d] = rng.uniform(vmin, vmax);
        agent.position[d] = bounds.clamp(agent.position[d] + agent.velocity[d]);
    }
}

void mud_ring_move(Agent& agent, std::span<const double> best, std::span<const double> K,
                   std::span<const double> C, double l, Bounds bounds) {
    const double ring = std::sin(2.0 * std::numbers::pi * l);
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        const double A = std::abs(C[d] * best[d] - agent.position[d]);
        agent.position[d] = bounds.clamp(best[d] * ring - K[d] * A);
    }
}

void mud_ring_move(Agent& agent, std::span<const double> best, std::span<const double> K, double l,
                   Rng& rng, Bounds bounds) {
    const double ring = std::sin(2.0 * std::numbers::pi * l);
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        const double C = 2.0 * rng.uniform();
        const double A = std::abs(C * best[d] - agent.position[d]);
        agent.position[d] = bounds.clamp(best[d] * ring - K[d] * A);
    }
}

namespace {

constexpr double kSpiralShape = 1.0;

double spiral_factor(double l) {
    return std::exp(kSpiralShape * l) * std::cos(2.0 * std::numbers::pi * l);
}

}  // namespace

void bubble_net_move(Agent& agent, std::span<const double> best, std::span<const double> C, double l,
                     Bounds bounds) {
    const double spiral = spiral_factor(l);
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        const double A = std::abs(C[d] * best[d] - agent.position[d]);
        agent.position[d] = bounds.clamp(A * spiral + best[d]);
    }
}

void bubble_net_move(Agent& agent, std::span<const double> best, double l, Rng& rng, Bounds bounds) {
    const double spiral = spiral_factor(l);
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        const double C = 2.0 * rng.uniform();
        const double A = std::abs(C * best[d] - agent.position[d]);
        agent.position[d] = bounds.clamp(A * spiral + best[d]);
    }
}

void encircle_move(Agent& agent, std::span<const double> target, std::span<const double> K,
                   std::span<const double> C, Bounds bounds) {
    for (std::size_t d = 0; d < agent.position.size(); ++d) {
        const double A = std::abs(C[d] * target[d] - agent.position[d]);
        agent.position[d] = bounds.clamp(target[d] - K[d] * A);
    }
}

namespace {

void evaluate(std::vector<Agent>& agents, const Objective& objective, bool parallel) {
    const auto n = static_cast<std::ptrdiff_t>(agents.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        agents[i].fitness = objective(agents[i].position);
    }
}

// First agent with the lowest fitness.
std::size_t argmin_fitness(const std::vector<Agent>& agents) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < agents.size(); ++i) {
        if (agents[i].fitness < agents[best].fitness) best = i;
    }
    return best;
}

}  // namespace

RunResult run(const OptimizerConfig& config, const Objective& objective) {
    config.validate();
    const auto dim = static_cast<std::size_t>(config.dim);
    const Bounds bounds = config.bounds();
    const double vmax = config.max_speed();
    Rng rng(config.seed);

    std::vector<Agent> agents(static_cast<std::size_t>(config.population));
    for (auto& agent : agents) {
        agent.position.resize(dim);
        agent.velocity.resize(dim);
        for (auto& x : agent.position) x = rng.uniform(config.lb, config.ub);
        for (auto& v : agent.velocity) v = rng.uniform(-vmax, vmax);
    }
    evaluate(agents, objective, config.parallel_evaluation);

    RunResult result;
    result.evaluations = agents.size();
    {
        const auto& first = agents[argmin_fitness(agents)];
        result.best = BestRecord{first.position, first.fitness, 0};
    }
    result.trace.best_fitness_per_iteration.reserve(static_cast<std::size_t>(config.max_iters));
    result.branches.per_iteration.assign(static_cast<std::size_t>(config.max_iters), {});

    std::vector<double> C(dim);
    for (int it = 0; it < config.max_iters; ++it) {
        const double a = coefficient_a(it, config.max_iters);
        const std::vector<double> best = result.best.position;
        auto& branch_counts = result.branches.per_iteration[static_cast<std::size_t>(it)];
        auto take = [&](Branch b) { ++branch_counts[static_cast<int>(b)]; };

        for (std::size_t i = 0; i < agents.size(); ++i) {
            Agent& agent = agents[i];
            const auto K = coefficient_K(a, config.dim, rng);
            const bool wide = gate_magnitude(K) >= 1.0;

            switch (config.algorithm) {
                case Algorithm::MRA: {
                    const double l = rng.uniform(-1.0, 1.0);
                    if (wide) {
                        explore_move(agent, rng, -vmax, vmax, bounds);
                        take(Branch::Explore);
                    } else {
                        mud_ring_move(agent, best, K, l, rng, bounds);
                        take(Branch::MudRing);
                    }
                    break;
                }
                case Algorithm::WMRA: {
                    const double p = rng.uniform();
                    const double l = rng.uniform(-1.0, 1.0);
                    if (p < 0.5) {
                        if (wide) {
                            explore_move(agent, rng, -vmax, vmax, bounds);
                            take(Branch::Explore);
                        } else {
                            mud_ring_move(agent, best, K, l, rng, bounds);
                            take(Branch::MudRing);
                        }
                    } else {
                        bubble_net_move(agent, best, l, rng, bounds);
                        take(Branch::BubbleNet);
                    }
                    break;
                }
                case Algorithm::WOA: {
                    const double p = rng.uniform();
                    const double l = rng.uniform(-1.0, 1.0);
                    if (p < 0.5) {
                        for (auto& c : C) c = 2.0 * rng.uniform();
                        if (wide) {
                            const std::size_t j = rng.index(agents.size());
                            const std::vector<double> target = agents[j].position;
                            encircle_move(agent, target, K, C, bounds);
                            take(Branch::SearchPrey);
                        } else {
                            encircle_move(agent, best, K, C, bounds);
                            take(Branch::Encircle);
                        }
                    } else {
                        bubble_net_move(agent, best, l, rng, bounds);
                        take(Branch::BubbleNet);
                    }
                    break;
                }
            }
        }

        evaluate(agents, objective, config.parallel_evaluation);
        result.evaluations += agents.size();
        const auto& leader = agents[argmin_fitness(agents)];
        if (leader.fitness < result.best.fitness) {
            result.best = BestRecord{leader.position, leader.fitness, it + 1};
        }
        result.trace.best_fitness_per_iteration.push_back(result.best.fitness);
    }
    return result;
}

}  // namespace segment
