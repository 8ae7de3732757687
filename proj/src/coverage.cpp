#include "fleetcover/coverage.hpp"

#include <algorithm>
#include <stdexcept>

namespace fleetcover {

Selection::Selection(std::vector<std::string> ids) : agent_ids(std::move(ids)) {
    std::sort(agent_ids.begin(), agent_ids.end());
    agent_ids.erase(std::unique(agent_ids.begin(), agent_ids.end()), agent_ids.end());
}

std::strong_ordering compare_scored(const ScoredSelection& a, const ScoredSelection& b) {
    if (a.score.per_slot.size() != b.score.per_slot.size())
        throw std::invalid_argument("compare_scored: scores cover different slot counts");
    if (a.score.ccv != b.score.ccv)
        return a.score.ccv < b.score.ccv ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
    if (a.score.min_slot != b.score.min_slot)
        return a.score.min_slot < b.score.min_slot ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
    // Full score tie: the lexicographically lower id list is preferred.
    if (a.selection.agent_ids != b.selection.agent_ids)
        return a.selection.agent_ids < b.selection.agent_ids ? std::strong_ordering::greater
                                                             : std::strong_ordering::less;
    return std::strong_ordering::equal;
}

namespace {

std::vector<const CoverageSignature*> resolve(const Selection& sel, const SignatureMap& sigs) {
    std::vector<const CoverageSignature*> members;
    members.reserve(sel.size());
    for (const auto& id : sel.agent_ids) {
        auto it = sigs.find(id);
        if (it == sigs.end())
            throw std::invalid_argument("unknown agent id: " + id);
        members.push_back(&it->second);
    }
    return members;
}

std::int64_t weighted_union(const std::vector<const CoverageSignature*>& members,
                            std::size_t slot, const WeightGrid& weights, Bitset& scratch) {
    scratch.clear();
    for (const auto* sig : members) {
        if (slot >= sig->visited.size())
            throw std::invalid_argument("slot index past signature of agent " + sig->agent_id);
        scratch |= sig->visited[slot];
    }
    std::int64_t total = 0;
    scratch.for_each_set([&](std::size_t cell) { total += weights.weights[cell]; });
    return total;
}

}  // namespace

std::int64_t slot_coverage(const Selection& sel, const SignatureMap& sigs,
                           const WeightGrid& weights, std::size_t slot) {
    auto members = resolve(sel, sigs);
    Bitset scratch(weights.grid.cell_count());
    return weighted_union(members, slot, weights, scratch);
}

Score score_selection(const Selection& sel, const SignatureMap& sigs,
                      const WeightGrid& weights, const TimeSlotting& slotting) {
    auto members = resolve(sel, sigs);
    const std::size_t slots = slotting.slot_count();
    for (const auto* sig : members)
        if (sig->visited.size() != slots)
            throw std::invalid_argument("signature of agent " + sig->agent_id +
                                        " does not match the slotting");
    Bitset scratch(weights.grid.cell_count());
    Score score;
    score.per_slot.resize(slots);
    for (std::size_t k = 0; k < slots; ++k) {
        score.per_slot[k] = weighted_union(members, k, weights, scratch);
        score.ccv += score.per_slot[k];
    }
    score.min_slot = slots == 0 ? 0 : *std::min_element(score.per_slot.begin(),
                                                        score.per_slot.end());
    return score;
}

Evaluator::Evaluator(const WeightGrid& weights, std::vector<const CoverageSignature*> roster)
    : weights_(weights.weights), roster_(std::move(roster)),
      scratch_(weights.grid.cell_count()) {
    if (!roster_.empty()) {
        slot_count_ = roster_.front()->visited.size();
        for (const auto* sig : roster_) {
            if (sig->visited.size() != slot_count_)
                throw std::invalid_argument("signatures disagree on slot count");
            for (const auto& bs : sig->visited)
                if (bs.size() != weights.grid.cell_count())
                    throw std::invalid_argument("signature universe does not match grid");
        }
    }
}

std::int64_t Evaluator::slot_value(std::span<const std::uint32_t> members,
                                   std::size_t slot) const {
    scratch_.clear();
    for (auto idx : members) scratch_ |= roster_[idx]->visited[slot];
    std::int64_t total = 0;
    scratch_.for_each_set([&](std::size_t cell) { total += weights_[cell]; });
    return total;
}

Score Evaluator::score(std::span<const std::uint32_t> members) const {
    Score score;
    score.per_slot.resize(slot_count_);
    for (std::size_t k = 0; k < slot_count_; ++k) {
        score.per_slot[k] = slot_value(members, k);
        score.ccv += score.per_slot[k];
    }
    score.min_slot = slot_count_ == 0
                         ? 0
                         : *std::min_element(score.per_slot.begin(), score.per_slot.end());
    ++evaluations_;
    return score;
}

}  // namespace fleetcover
