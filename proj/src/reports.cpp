#include "fleetcover/reports.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fleetcover/decimal.hpp"
#include "fleetcover/util.hpp"

namespace fleetcover {

nlohmann::json report_to_json(const SolveReport& report) {
    nlohmann::json per_slot = nlohmann::json::array();
    for (auto v : report.score.per_slot) per_slot.push_back(format_decimal(v));
    return {
        {"algorithm", report.algorithm},
        {"selection", report.selection.agent_ids},
        {"score",
         {{"ccv", format_decimal(report.score.ccv)},
          {"per_slot", std::move(per_slot)},
          {"min_slot", format_decimal(report.score.min_slot)}}},
        {"evaluations", report.evaluations},
        {"wall_time_ns", report.wall_time.count()},
        {"extras", report.extras},
    };
}

nlohmann::json ingest_stats_to_json(const IngestStats& stats) {
    return {
        {"records_read", stats.records_read},
        {"pings_assigned", stats.pings_assigned},
        {"dropped_out_of_bounds", stats.dropped_out_of_bounds},
        {"dropped_out_of_window", stats.dropped_out_of_window},
        {"rejected_malformed", stats.rejected_malformed},
    };
}

std::int64_t Histogram::bucket_low(std::size_t i) const {
    if (counts.size() <= 1) return min_ccv;
    const auto span = static_cast<__int128>(max_ccv) - min_ccv;
    return min_ccv + static_cast<std::int64_t>(span * static_cast<__int128>(i) /
                                               static_cast<__int128>(counts.size()));
}

std::int64_t Histogram::bucket_high(std::size_t i) const {
    if (i + 1 >= counts.size()) return max_ccv;
    return bucket_low(i + 1);
}

Histogram compute_ccv_histogram(const Instance& instance, std::size_t k, std::size_t bins,
                                std::uint64_t budget) {
    if (instance.weights == nullptr || instance.signatures == nullptr)
        throw std::invalid_argument("instance is missing weights or signatures");
    if (bins == 0) throw std::invalid_argument("bins must be at least 1");
    if (k == 0) throw std::invalid_argument("sensor budget k must be at least 1");
    const std::size_t n = instance.signatures->size();
    if (k > n)
        throw std::invalid_argument("sensor budget k=" + std::to_string(k) +
                                    " exceeds fleet size " + std::to_string(n));
    const auto total = combination_count(n, k, budget);
    if (!total) throw BudgetExceeded(n, k, budget);

    std::vector<const CoverageSignature*> roster;
    roster.reserve(n);
    const std::size_t slots = instance.slotting.slot_count();
    for (const auto& [id, sig] : *instance.signatures) {
        if (sig.visited.size() != slots)
            throw std::invalid_argument("signature for agent " + id + " has " +
                                        std::to_string(sig.visited.size()) +
                                        " slots, slotting has " + std::to_string(slots));
        roster.push_back(&sig);
    }
    Evaluator eval(*instance.weights, std::move(roster));

    std::vector<std::int64_t> values;
    values.reserve(static_cast<std::size_t>(*total));
    std::vector<std::uint32_t> members(k);
    std::iota(members.begin(), members.end(), 0);
    while (true) {
        values.push_back(eval.score(members).ccv);
        if (!next_combination(members, n)) break;
    }

    Histogram h;
    h.min_ccv = *std::min_element(values.begin(), values.end());
    h.max_ccv = *std::max_element(values.begin(), values.end());
    if (h.min_ccv == h.max_ccv) {
        h.counts.assign(1, values.size());
        return h;
    }
    h.counts.assign(bins, 0);
    const auto span = static_cast<__int128>(h.max_ccv) - h.min_ccv;
    for (auto v : values) {
        auto idx = static_cast<std::size_t>((static_cast<__int128>(v) - h.min_ccv) *
                                            static_cast<__int128>(bins) / span);
        if (idx >= bins) idx = bins - 1;  // v == max_ccv lands in the top bucket
        ++h.counts[idx];
    }
    return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
    out << "bucket_low,bucket_high,selection_count\n";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i)
        out << format_decimal(histogram.bucket_low(i)) << ','
            << format_decimal(histogram.bucket_high(i)) << ',' << histogram.counts[i] << '\n';
}

CoverageReport compute_temporal_coverage(const Selection& sel, const SignatureMap& sigs,
                                         const GridSpec& grid, const TimeSlotting& slotting) {
    if (sel.empty()) throw std::invalid_argument("selection is empty");
    const std::size_t slots = slotting.slot_count();
    const std::size_t cells = grid.cell_count();
    std::vector<const CoverageSignature*> members;
    for (const auto& id : sel.agent_ids) {
        auto it = sigs.find(id);
        if (it == sigs.end()) throw std::invalid_argument("unknown agent id: " + id);
        if (it->second.visited.size() != slots)
            throw std::invalid_argument("signature for agent " + id + " has " +
                                        std::to_string(it->second.visited.size()) +
                                        " slots, slotting has " + std::to_string(slots));
        members.push_back(&it->second);
    }

    std::vector<std::size_t> visited(cells, 0);
    Bitset slot_union(cells);
    for (std::size_t s = 0; s < slots; ++s) {
        slot_union.clear();
        for (const auto* sig : members) slot_union |= sig->visited[s];
        slot_union.for_each_set([&](std::size_t cell) { ++visited[cell]; });
    }

    CoverageReport report;
    report.total_slots = slots;
    report.cells.reserve(cells);
    std::int64_t sum = 0;
    const auto l = static_cast<std::int64_t>(slots);
    for (std::size_t i = 0; i < cells; ++i) {
        const auto v = static_cast<std::int64_t>(visited[i]);
        // round half up to 6 decimal places
        const std::int64_t fraction = (v * kDecimalScale * 2 + l) / (2 * l);
        sum += fraction;
        report.cells.push_back({{i / grid.cols, i % grid.cols}, visited[i], fraction});
    }
    const auto c = static_cast<std::int64_t>(cells);
    report.grid_average = (sum * 2 + c) / (2 * c);
    return report;
}

void write_coverage_csv(std::ostream& out, const CoverageReport& report) {
    out << "row,col,visited_slots,total_slots,coverage\n";
    for (const auto& cell : report.cells)
        out << cell.cell.row << ',' << cell.cell.col << ',' << cell.visited_slots << ','
            << report.total_slots << ',' << format_decimal(cell.fraction) << '\n';
    out << "# grid_average," << format_decimal(report.grid_average) << '\n';
}

}  // namespace fleetcover
