#pragma once

#include "segment/encoding.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace segment {

enum class Algorithm { WMRA, MRA, WOA };

std::string_view to_string(Algorithm a);
/// Case-insensitive; throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// Seeded uniform source. Draws are (x >> 11) * 2^-53 from mt19937_64 so the
/// stream is identical on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

struct Bounds {
    double lb = 1.0;
    double ub = 255.0;

    double clamp(double x) const { return x < lb ? lb : (x > ub ? ub : x); }
};

struct Agent {
    std::vector<double> position;
    std::vector<double> velocity;
    double fitness = 0.0;
};

struct BestRecord {
    std::vector<double> position;
    double fitness = 0.0;
    int iteration_found = 0;
};

struct ConvergenceTrace {
    std::vector<double> best_fitness_per_iteration;
};

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::WMRA;
    int population = 25;
    int max_iters = 300;
    int dim = 2;
    double lb = 1.0;
    double ub = 255.0;
    std::uint64_t seed = 0;
    double v_fraction = 0.1;
    /// Evaluate each sweep's fitness values with OpenMP. Results are identical
    /// either way; the objective must be safe to call concurrently.
    bool parallel_evaluation = false;

    /// Throws ConfigError when N < 2, max_iters < 1, dim < 1, lb >= ub or v_fraction outside (0, 1].
    void validate() const;
    Bounds bounds() const { return {lb, ub}; }
    double max_speed() const { return v_fraction * (ub - lb); }
};

enum class Branch : int { Explore = 0, MudRing, BubbleNet, Encircle, SearchPrey, kCount };

/// How many agent moves took each branch, per iteration.
struct BranchLog {
    std::vector<std::array<int, static_cast<int>(Branch::kCount)>> per_iteration;

    int count(Branch b, int iteration) const { return per_iteration[iteration][static_cast<int>(b)]; }
};

struct RunResult {
    BestRecord best;
    ConvergenceTrace trace;
    BranchLog branches;
    std::uint64_t evaluations = 0;
};

// Coefficients ---------------------------------------------------------------

/// a' = 2 (1 - it / max_iters); 2 at the first iteration, 0 at the last.
double coefficient_a(int it, int max_iters);

/// K' = 2 a r - a per component for the given uniform draws r.
std::vector<double> coefficient_K(double a, std::span<const double> r);
std::vector<double> coefficient_K(double a, int dim, Rng& rng);

/// Scalar size of K' for the |K'| >= 1 gate: Euclidean norm over sqrt(dim).
double gate_magnitude(std::span<const double> K);

// Moves ----------------------------------------------------------------------
// Each move rewrites agent.position in place and clamps it to the bounds.

/// Velocity step D' += V'. The rng overload resamples V' uniformly in [vmin, vmax].
void explore_move(Agent& agent, std::span<const double> velocity, Bounds bounds);
void explore_move(Agent& agent, Rng& rng, double vmin, double vmax, Bounds bounds);

/// Mud ring: A = |C D* - D|, D = D* sin(2 pi l) - K A.
void mud_ring_move(Agent& agent, std::span<const double> best, std::span<const double> K,
                   std::span<const double> C, double l, Bounds bounds);
void mud_ring_move(Agent& agent, std::span<const double> best, std::span<const double> K, double l,
                   Rng& rng, Bounds bounds);

/// Logarithmic spiral: A = |C D* - D|, D = A e^{b l} cos(2 pi l) + D*, b = 1.
void bubble_net_move(Agent& agent, std::span<const double> best, std::span<const double> C, double l,
                     Bounds bounds);
void bubble_net_move(Agent& agent, std::span<const double> best, double l, Rng& rng, Bounds bounds);

/// Whale encircling around a target: D = T - K |C T - D|.
void encircle_move(Agent& agent, std::span<const double> target, std::span<const double> K,
                   std::span<const double> C, Bounds bounds);

// Driver ---------------------------------------------------------------------

/// Minimizes the objective over [lb, ub]^dim. Deterministic in config.seed.
RunResult run(const OptimizerConfig& config, const Objective& objective);

}  // namespace segment
