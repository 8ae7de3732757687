#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fleetcover/coverage.hpp"
#include "fleetcover/decimal.hpp"
#include "fleetcover/geo_grid.hpp"
#include "fleetcover/trajectory.hpp"

namespace fleetcover {

/// One problem instance shared by every solver: the weighted grid, the
/// compiled signatures, and the slotting they were compiled against.
struct Instance {
    const WeightGrid* weights = nullptr;
    const SignatureMap* signatures = nullptr;
    TimeSlotting slotting;
};

inline constexpr std::uint64_t kDefaultEvaluationBudget = 10'000'000;

/// Thrown when an enumeration would exceed the evaluation budget; carries
/// the combination count for the refusal message.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t n, std::uint64_t k, std::uint64_t budget);
};

struct SolveReport {
    std::string algorithm;
    Selection selection;
    Score score;  // always evaluated on the full weight grid
    std::uint64_t evaluations = 0;
    std::chrono::nanoseconds wall_time{0};
    nlohmann::json extras = nlohmann::json::object();
};

struct GaParams {
    std::size_t population_size = 40;
    std::size_t max_iterations = 20;
    std::int64_t replace_fraction = 200'000;  // scaled decimal in (0, 1), default 0.20
    std::size_t convergence_patience = 3;     // stagnant generations before stopping
    std::uint64_t rng_seed = 0;
};

/// Uniformly random size-k selection; the variance baseline.
SolveReport solve_random(const Instance& instance, std::size_t k, std::uint64_t rng_seed);

/// Scores every size-k selection and returns the preference-maximal one.
/// Sizes below k are dominated by monotonicity and are not enumerated.
/// Refuses with the combination count when C(n, k) exceeds the budget.
SolveReport solve_exhaustive(const Instance& instance, std::size_t k,
                             std::uint64_t budget = kDefaultEvaluationBudget);

/// Restricts the search to hotspot cells: non-hotspot weights are masked to
/// zero, agents that never touch a hotspot are dropped, and the reduced
/// fleet is enumerated exhaustively against the masked grid. The reported
/// score is re-evaluated on the full grid so it is comparable with the
/// other algorithms. If fewer than k agents touch hotspots the smaller
/// selection is returned with a warning in extras.
SolveReport solve_hotspot(const Instance& instance, std::size_t k,
                          std::uint64_t budget = kDefaultEvaluationBudget);

/// Fixed-cardinality genetic algorithm. Chromosomes are agent bit strings
/// with exactly k ones; the initial population is seeded from the
/// hotspot-restricted ranking, fitness is the full-grid preference order,
/// each generation replaces the worst slice with repaired single-point
/// crossover children of elite parents, and the all-time best is returned.
/// `scored_observer`, when set, sees every chromosome just before it is
/// scored (test hook).
SolveReport solve_genetic(const Instance& instance, std::size_t k, const GaParams& params,
                          std::uint64_t budget = kDefaultEvaluationBudget,
                          const std::function<void(const std::vector<std::uint8_t>&)>&
                              scored_observer = nullptr);

/// Redundancy-minimizing marginal-gain selection: repeatedly pick the agent
/// adding the most residual coverage, then zero the residual weight of
/// every (cell, slot) pair it covers. Ties go to the lower agent id.
SolveReport solve_greedy(const Instance& instance, std::size_t k);

/// Flip random surplus ones to zero (or missing zeros to one) until the
/// chromosome has exactly `k` ones. The crossover repair operator.
void repair_chromosome(std::vector<std::uint8_t>& chromosome, std::size_t k,
                       std::mt19937_64& rng);

}  // namespace fleetcover
