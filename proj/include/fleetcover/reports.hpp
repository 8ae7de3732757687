#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "fleetcover/coverage.hpp"
#include "fleetcover/solvers.hpp"
#include "fleetcover/trajectory.hpp"

namespace fleetcover {

/// All score fields serialize as exact decimal strings; wall_time_ns is the
/// only field expected to vary between identical runs.
nlohmann::json report_to_json(const SolveReport& report);

nlohmann::json ingest_stats_to_json(const IngestStats& stats);

/// CCV distribution over every size-k selection, equal-width bins over
/// [min, max]. A degenerate range (all selections tie) collapses to one
/// bucket. Bounds are scaled decimals.
struct Histogram {
    std::int64_t min_ccv = 0;
    std::int64_t max_ccv = 0;
    std::vector<std::uint64_t> counts;

    std::int64_t bucket_low(std::size_t i) const;
    std::int64_t bucket_high(std::size_t i) const;
};

Histogram compute_ccv_histogram(const Instance& instance, std::size_t k, std::size_t bins = 20,
                                std::uint64_t budget = kDefaultEvaluationBudget);

/// `bucket_low,bucket_high,selection_count` rows, decimal-string bounds.
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

/// Per-cell fraction of slots with at least one visit by the selection.
struct CellCoverage {
    CellIndex cell;
    std::size_t visited_slots = 0;
    std::int64_t fraction = 0;  // scaled decimal, rounded to 6 places
};

struct CoverageReport {
    std::size_t total_slots = 0;
    std::vector<CellCoverage> cells;   // row-major, every cell
    std::int64_t grid_average = 0;     // mean of the per-cell rounded fractions
};

/// Rejects an empty selection and unknown agent ids.
CoverageReport compute_temporal_coverage(const Selection& sel, const SignatureMap& sigs,
                                         const GridSpec& grid, const TimeSlotting& slotting);

/// `row,col,visited_slots,total_slots,coverage` rows, then a
/// `# grid_average,<value>` trailer.
void write_coverage_csv(std::ostream& out, const CoverageReport& report);

}  // namespace fleetcover
