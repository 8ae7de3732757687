#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fleetcover/geo_grid.hpp"
#include "fleetcover/trajectory.hpp"

namespace fleetcover {

/// A candidate agent subset, kept sorted and duplicate-free so the final
/// comparison key is well defined.
struct Selection {
    std::vector<std::string> agent_ids;

    Selection() = default;
    explicit Selection(std::vector<std::string> ids);

    std::size_t size() const { return agent_ids.size(); }
    bool empty() const { return agent_ids.empty(); }
    bool operator==(const Selection&) const = default;
};

/// Evaluated objective of one selection. All values are exact scaled
/// decimals; ccv is the sum of per_slot and min_slot its minimum.
struct Score {
    std::int64_t ccv = 0;
    std::vector<std::int64_t> per_slot;
    std::int64_t min_slot = 0;
};

struct ScoredSelection {
    Selection selection;
    Score score;
};

/// Total preference order: higher ccv wins, then higher min_slot, then the
/// lexicographically lower sorted agent-id list. greater means `a` is
/// preferred. Throws std::invalid_argument on mismatched slot counts.
std::strong_ordering compare_scored(const ScoredSelection& a, const ScoredSelection& b);

inline bool better(const ScoredSelection& a, const ScoredSelection& b) {
    return compare_scored(a, b) == std::strong_ordering::greater;
}

/// Weighted coverage of one slot: the union of the selected agents' visited
/// cells in that slot, summed over cell weights. Visits by several agents to
/// the same cell count once.
std::int64_t slot_coverage(const Selection& sel, const SignatureMap& sigs,
                           const WeightGrid& weights, std::size_t slot);

/// Full objective over every slot; cells revisited in later slots count
/// again, only within-slot duplicates are eliminated.
Score score_selection(const Selection& sel, const SignatureMap& sigs,
                      const WeightGrid& weights, const TimeSlotting& slotting);

/// Index-based scoring engine used by the solvers. Holds the flattened
/// weight vector and the roster of signatures, counts every evaluation, and
/// reuses one scratch bitset; create one per worker, it is not safe for
/// concurrent use.
class Evaluator {
public:
    Evaluator(const WeightGrid& weights, std::vector<const CoverageSignature*> roster);

    std::size_t agent_count() const { return roster_.size(); }
    std::size_t slot_count() const { return slot_count_; }

    /// Union-then-weighted-popcount for one slot. Does not count as an
    /// evaluation on its own.
    std::int64_t slot_value(std::span<const std::uint32_t> members, std::size_t slot) const;

    /// Full Score of a selection given as roster indices. Counts one
    /// evaluation.
    Score score(std::span<const std::uint32_t> members) const;

    std::uint64_t evaluations() const { return evaluations_; }
    void reset_evaluations() { evaluations_ = 0; }

private:
    std::size_t slot_count_ = 0;
    std::vector<std::int64_t> weights_;  // row-major over cells, scaled
    std::vector<const CoverageSignature*> roster_;
    mutable Bitset scratch_;
    mutable std::uint64_t evaluations_ = 0;
};

}  // namespace fleetcover
