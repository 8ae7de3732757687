#include "fleetcover/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "fleetcover/util.hpp"

namespace fleetcover {

namespace {

using Clock = std::chrono::steady_clock;

struct Roster {
    std::vector<std::string> ids;
    std::vector<const CoverageSignature*> sigs;

    std::size_t size() const { return ids.size(); }
};

// SignatureMap iterates in id order, so roster index order equals id order
// and index vectors compare like id vectors everywhere below.
Roster collect_roster(const Instance& instance) {
    if (instance.weights == nullptr || instance.signatures == nullptr)
        throw std::invalid_argument("instance is missing weights or signatures");
    Roster r;
    r.ids.reserve(instance.signatures->size());
    r.sigs.reserve(instance.signatures->size());
    const std::size_t slots = instance.slotting.slot_count();
    for (const auto& [id, sig] : *instance.signatures) {
        if (sig.visited.size() != slots)
            throw std::invalid_argument("signature for agent " + id + " has " +
                                        std::to_string(sig.visited.size()) +
                                        " slots, slotting has " + std::to_string(slots));
        r.ids.push_back(id);
        r.sigs.push_back(&sig);
    }
    return r;
}

void require_budget_fits(std::size_t k, std::size_t n) {
    if (k == 0) throw std::invalid_argument("sensor budget k must be at least 1");
    if (k > n)
        throw std::invalid_argument("sensor budget k=" + std::to_string(k) +
                                    " exceeds fleet size " + std::to_string(n));
}

// Shared preference order: higher ccv, then higher minimum slot value, then
// the lexicographically lower member set. Strict.
bool prefer(const Score& a, const std::vector<std::uint32_t>& ma, const Score& b,
            const std::vector<std::uint32_t>& mb) {
    if (a.ccv != b.ccv) return a.ccv > b.ccv;
    if (a.min_slot != b.min_slot) return a.min_slot > b.min_slot;
    return ma < mb;
}

struct Candidate {
    Score score;
    std::vector<std::uint32_t> members;
};

bool prefer(const Candidate& a, const Candidate& b) {
    return prefer(a.score, a.members, b.score, b.members);
}

// Enumerate every size-k subset of `universe` (sorted roster indices) and
// keep the `limit` most preferred, best first. Scores come from `eval`,
// which counts the evaluations.
std::vector<Candidate> rank_subsets(const Evaluator& eval,
                                    const std::vector<std::uint32_t>& universe, std::size_t k,
                                    std::size_t limit) {
    std::vector<Candidate> best;
    if (limit == 0 || k > universe.size()) return best;
    std::vector<std::uint32_t> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<std::uint32_t> members(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) members[i] = universe[pos[i]];
        Candidate c{eval.score(members), members};
        if (best.size() < limit || prefer(c, best.back())) {
            auto it = std::upper_bound(best.begin(), best.end(), c,
                                       [](const Candidate& a, const Candidate& b) {
                                           return prefer(a, b);
                                       });
            best.insert(it, std::move(c));
            if (best.size() > limit) best.pop_back();
        }
        if (!next_combination(pos, universe.size())) break;
    }
    return best;
}

Selection to_selection(const Roster& roster, const std::vector<std::uint32_t>& members) {
    std::vector<std::string> ids;
    ids.reserve(members.size());
    for (auto i : members) ids.push_back(roster.ids[i]);
    return Selection(std::move(ids));
}

// Sorted uniform k-subset of [0, n) by partial Fisher-Yates.
std::vector<std::uint32_t> sample_members(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + uniform_below(rng, n - i)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::uint32_t> members_of(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint32_t> m;
    for (std::uint32_t i = 0; i < bits.size(); ++i)
        if (bits[i]) m.push_back(i);
    return m;
}

std::vector<std::uint8_t> bits_of(const std::vector<std::uint32_t>& members, std::size_t n) {
    std::vector<std::uint8_t> bits(n, 0);
    for (auto i : members) bits[i] = 1;
    return bits;
}

// Roster indices of agents whose signature touches a hotspot cell in any slot.
std::vector<std::uint32_t> hotspot_touching(const Roster& roster, const Bitset& mask) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < roster.size(); ++i) {
        for (const auto& slot_bits : roster.sigs[i]->visited) {
            if (slot_bits.intersects(mask)) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t n, std::uint64_t k, std::uint64_t budget)
    : std::runtime_error("C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                         combination_count_text(n, k) +
                         " candidate selections exceed the evaluation budget of " +
                         std::to_string(budget)) {}

SolveReport solve_random(const Instance& instance, std::size_t k, std::uint64_t rng_seed) {
    const auto t0 = Clock::now();
    Roster roster = collect_roster(instance);
    require_budget_fits(k, roster.size());

    std::mt19937_64 rng(rng_seed);
    const auto members = sample_members(roster.size(), k, rng);

    Evaluator eval(*instance.weights, roster.sigs);
    SolveReport report;
    report.algorithm = "random";
    report.selection = to_selection(roster, members);
    report.score = eval.score(members);
    report.evaluations = eval.evaluations();
    report.extras["rng_seed"] = rng_seed;
    report.wall_time = Clock::now() - t0;
    return report;
}

SolveReport solve_exhaustive(const Instance& instance, std::size_t k, std::uint64_t budget) {
    const auto t0 = Clock::now();
    Roster roster = collect_roster(instance);
    require_budget_fits(k, roster.size());
    if (!combination_count(roster.size(), k, budget))
        throw BudgetExceeded(roster.size(), k, budget);

    std::vector<std::uint32_t> universe(roster.size());
    std::iota(universe.begin(), universe.end(), 0);
    Evaluator eval(*instance.weights, roster.sigs);
    auto best = rank_subsets(eval, universe, k, 1);

    SolveReport report;
    report.algorithm = "exhaustive";
    report.selection = to_selection(roster, best.front().members);
    report.score = std::move(best.front().score);
    report.evaluations = eval.evaluations();
    report.wall_time = Clock::now() - t0;
    return report;
}

SolveReport solve_hotspot(const Instance& instance, std::size_t k, std::uint64_t budget) {
    const auto t0 = Clock::now();
    Roster roster = collect_roster(instance);
    if (k == 0) throw std::invalid_argument("sensor budget k must be at least 1");

    const WeightGrid masked = instance.weights->masked_to_hotspots();
    const Bitset mask = instance.weights->hotspot_mask();
    const auto universe = hotspot_touching(roster, mask);
    const std::size_t m = universe.size();

    Evaluator masked_eval(masked, roster.sigs);
    SolveReport report;
    report.algorithm = "hotspot";
    report.extras["reduced_fleet_size"] = m;

    std::vector<std::uint32_t> winner;
    std::int64_t masked_ccv = 0;
    if (m == 0) {
        report.extras["warning"] = "no agent touches a hotspot cell; selection is empty";
    } else if (m < k) {
        report.extras["warning"] = "only " + std::to_string(m) + " of the requested " +
                                   std::to_string(k) + " agents touch hotspot cells";
        winner = universe;
        masked_ccv = masked_eval.score(winner).ccv;
    } else {
        if (!combination_count(m, k, budget)) throw BudgetExceeded(m, k, budget);
        auto best = rank_subsets(masked_eval, universe, k, 1);
        winner = std::move(best.front().members);
        masked_ccv = best.front().score.ccv;
    }
    report.extras["masked_ccv"] = format_decimal(masked_ccv);

    Evaluator full_eval(*instance.weights, roster.sigs);
    report.selection = to_selection(roster, winner);
    report.score = full_eval.score(winner);
    report.evaluations = masked_eval.evaluations();
    report.wall_time = Clock::now() - t0;
    return report;
}

SolveReport solve_genetic(const Instance& instance, std::size_t k, const GaParams& params,
                          std::uint64_t budget,
                          const std::function<void(const std::vector<std::uint8_t>&)>&
                              scored_observer) {
    const auto t0 = Clock::now();
    Roster roster = collect_roster(instance);
    const std::size_t n = roster.size();
    require_budget_fits(k, n);

    const std::size_t pop = params.population_size;
    if (pop < 4) throw std::invalid_argument("population_size must be at least 4");
    if (params.max_iterations == 0)
        throw std::invalid_argument("max_iterations must be positive");
    if (params.replace_fraction <= 0 || params.replace_fraction >= kDecimalScale)
        throw std::invalid_argument("replace_fraction must lie strictly between 0 and 1");
    if (combination_count(n, k, pop - 1))
        throw std::invalid_argument(
            "population_size " + std::to_string(pop) + " exceeds the " +
            combination_count_text(n, k) + " distinct size-" + std::to_string(k) +
            " selections");

    struct Chromosome {
        std::vector<std::uint8_t> bits;
        std::vector<std::uint32_t> members;
        Score score;
    };

    Evaluator full_eval(*instance.weights, roster.sigs);
    std::mt19937_64 rng(params.rng_seed);

    const auto score_bits = [&](std::vector<std::uint8_t> bits) {
        Chromosome c;
        c.members = members_of(bits);
        c.bits = std::move(bits);
        if (scored_observer) scored_observer(c.bits);
        c.score = full_eval.score(c.members);
        return c;
    };

    // Seed from the hotspot-restricted ranking; skipped when the reduced
    // enumeration would itself blow the budget (the population is then
    // entirely random).
    const WeightGrid masked = instance.weights->masked_to_hotspots();
    Evaluator masked_eval(masked, roster.sigs);
    const auto universe = hotspot_touching(roster, instance.weights->hotspot_mask());
    std::vector<Candidate> seeds;
    bool seeding_skipped = false;
    if (universe.size() >= k) {
        if (combination_count(universe.size(), k, budget))
            seeds = rank_subsets(masked_eval, universe, k, pop);
        else
            seeding_skipped = true;
    }

    std::vector<Chromosome> population;
    population.reserve(pop);
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& seed : seeds) {
        auto bits = bits_of(seed.members, n);
        if (seen.insert(bits).second) population.push_back(score_bits(std::move(bits)));
    }
    const std::size_t hotspot_seeded = population.size();
    while (population.size() < pop) {
        auto bits = bits_of(sample_members(n, k, rng), n);
        if (seen.insert(bits).second) population.push_back(score_bits(std::move(bits)));
    }

    const auto rank = [&] {
        std::sort(population.begin(), population.end(), [](const Chromosome& a, const Chromosome& b) {
            return prefer(a.score, a.members, b.score, b.members);
        });
    };
    rank();

    Chromosome all_time = population.front();
    const std::int64_t initial_best_ccv = all_time.score.ccv;

    // ceil(replace_fraction * pop) in exact scaled arithmetic.
    const std::size_t replaced =
        static_cast<std::size_t>((params.replace_fraction * static_cast<std::int64_t>(pop) +
                                  kDecimalScale - 1) /
                                 kDecimalScale);

    std::size_t generations = 0;
    std::size_t stagnant = 0;
    bool converged = false;
    while (generations < params.max_iterations) {
        // Breed from the current top `replaced` before discarding the
        // bottom `replaced`; the two slices may overlap when the fraction
        // exceeds one half.
        std::vector<Chromosome> children;
        children.reserve(replaced);
        for (std::size_t c = 0; c < replaced; ++c) {
            const std::size_t pa = uniform_below(rng, replaced);
            std::size_t pb = pa;
            if (replaced >= 2) {
                do {
                    pb = uniform_below(rng, replaced);
                } while (pb == pa);
            }
            const std::size_t cut = 1 + uniform_below(rng, n - 1);
            std::vector<std::uint8_t> bits(n);
            for (std::size_t i = 0; i < cut; ++i) bits[i] = population[pa].bits[i];
            for (std::size_t i = cut; i < n; ++i) bits[i] = population[pb].bits[i];
            repair_chromosome(bits, k, rng);
            children.push_back(score_bits(std::move(bits)));
        }
        population.resize(pop - replaced);
        for (auto& child : children) population.push_back(std::move(child));
        rank();
        ++generations;

        if (prefer(population.front().score, population.front().members, all_time.score,
                   all_time.members)) {
            all_time = population.front();
            stagnant = 0;
        } else {
            ++stagnant;
        }
        if (stagnant >= params.convergence_patience) {
            converged = true;
            break;
        }
    }

    SolveReport report;
    report.algorithm = "genetic";
    report.selection = to_selection(roster, all_time.members);
    report.score = std::move(all_time.score);
    report.evaluations = full_eval.evaluations() + masked_eval.evaluations();
    report.extras["generations"] = generations;
    report.extras["converged"] = converged;
    report.extras["hotspot_seeds"] = hotspot_seeded;
    report.extras["seed_evaluations"] = masked_eval.evaluations();
    report.extras["initial_best_ccv"] = format_decimal(initial_best_ccv);
    if (seeding_skipped)
        report.extras["warning"] = "hotspot seeding skipped: reduced-fleet enumeration "
                                   "exceeds the evaluation budget";
    report.wall_time = Clock::now() - t0;
    return report;
}

SolveReport solve_greedy(const Instance& instance, std::size_t k) {
    const auto t0 = Clock::now();
    Roster roster = collect_roster(instance);
    const std::size_t n = roster.size();
    require_budget_fits(k, n);

    const std::size_t cells = instance.weights->grid.cell_count();
    const std::size_t slots = instance.slotting.slot_count();
    // Residual weight per (slot, cell) pair; a pick zeroes everything it covers.
    std::vector<std::int64_t> residual(slots * cells);
    for (std::size_t s = 0; s < slots; ++s)
        std::copy(instance.weights->weights.begin(), instance.weights->weights.end(),
                  residual.begin() + static_cast<std::ptrdiff_t>(s * cells));

    const auto residual_gain = [&](std::uint32_t agent) {
        std::int64_t gain = 0;
        for (std::size_t s = 0; s < slots; ++s) {
            const std::int64_t* slot_res = residual.data() + s * cells;
            roster.sigs[agent]->visited[s].for_each_set(
                [&](std::size_t cell) { gain += slot_res[cell]; });
        }
        return gain;
    };

    std::vector<std::uint32_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::uint32_t> picked;
    std::uint64_t evaluations = 0;
    nlohmann::json pick_order = nlohmann::json::array();
    nlohmann::json gains = nlohmann::json::array();

    for (std::size_t step = 0; step < k; ++step) {
        std::size_t best_at = remaining.size();
        std::int64_t best_gain = -1;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const std::int64_t gain = residual_gain(remaining[i]);
            ++evaluations;
            if (gain > best_gain) {
                best_gain = gain;
                best_at = i;
            }
        }
        const std::uint32_t agent = remaining[best_at];
        picked.push_back(agent);
        pick_order.push_back(roster.ids[agent]);
        gains.push_back(format_decimal(best_gain));
        for (std::size_t s = 0; s < slots; ++s) {
            std::int64_t* slot_res = residual.data() + s * cells;
            roster.sigs[agent]->visited[s].for_each_set(
                [&](std::size_t cell) { slot_res[cell] = 0; });
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_at));
    }

    std::sort(picked.begin(), picked.end());
    Evaluator eval(*instance.weights, roster.sigs);
    SolveReport report;
    report.algorithm = "greedy";
    report.selection = to_selection(roster, picked);
    report.score = eval.score(picked);
    report.evaluations = evaluations;
    report.extras["pick_order"] = std::move(pick_order);
    report.extras["marginal_gains"] = std::move(gains);
    report.wall_time = Clock::now() - t0;
    return report;
}

void repair_chromosome(std::vector<std::uint8_t>& chromosome, std::size_t k,
                       std::mt19937_64& rng) {
    std::vector<std::uint32_t> ones;
    std::vector<std::uint32_t> zeros;
    for (std::uint32_t i = 0; i < chromosome.size(); ++i)
        (chromosome[i] ? ones : zeros).push_back(i);
    while (ones.size() > k) {
        const std::size_t at = uniform_below(rng, ones.size());
        chromosome[ones[at]] = 0;
        ones[at] = ones.back();
        ones.pop_back();
    }
    while (ones.size() < k) {
        const std::size_t at = uniform_below(rng, zeros.size());
        chromosome[zeros[at]] = 1;
        ones.push_back(zeros[at]);
        zeros[at] = zeros.back();
        zeros.pop_back();
    }
}

}  // namespace fleetcover
