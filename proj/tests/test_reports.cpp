#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "fleetcover/reports.hpp"
#include "fleetcover/solvers.hpp"
#include "oracle.hpp"

using namespace fleetcover;

TEST_CASE("solve reports serialize scores as exact decimal strings") {
    SolveReport r;
    r.algorithm = "exhaustive";
    r.selection = Selection({"bus2", "bus1"});
    r.score.per_slot = {10 * kDecimalScale, 12 * kDecimalScale, 9 * kDecimalScale};
    r.score.ccv = 31 * kDecimalScale;
    r.score.min_slot = 9 * kDecimalScale;
    r.evaluations = 10;
    r.wall_time = std::chrono::nanoseconds(12345);
    r.extras["note"] = 1;

    const nlohmann::json j = report_to_json(r);
    CHECK(j.at("algorithm") == "exhaustive");
    CHECK(j.at("selection") == nlohmann::json({"bus1", "bus2"}));
    CHECK(j.at("score").at("ccv") == "31");
    CHECK(j.at("score").at("per_slot") == nlohmann::json({"10", "12", "9"}));
    CHECK(j.at("score").at("min_slot") == "9");
    CHECK(j.at("evaluations") == 10);
    CHECK(j.at("wall_time_ns") == 12345);
    CHECK(j.at("extras").at("note") == 1);
}

TEST_CASE("identical runs serialize identically once wall time is dropped") {
    const fixtures::HotspotFixture f = fixtures::hotspot_fixture();
    const Instance inst{&f.weights, &f.sigs, f.slotting};
    nlohmann::json a = report_to_json(solve_hotspot(inst, 3));
    nlohmann::json b = report_to_json(solve_hotspot(inst, 3));
    a.erase("wall_time_ns");  // the one field allowed to differ
    b.erase("wall_time_ns");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("ingest stats serialize every counter") {
    const IngestStats stats{100, 80, 7, 9, 4};
    const nlohmann::json j = ingest_stats_to_json(stats);
    CHECK(j.at("records_read") == 100);
    CHECK(j.at("pings_assigned") == 80);
    CHECK(j.at("dropped_out_of_bounds") == 7);
    CHECK(j.at("dropped_out_of_window") == 9);
    CHECK(j.at("rejected_malformed") == 4);
}

TEST_CASE("the ccv histogram counts every selection exactly once") {
    const fixtures::Golden g = fixtures::golden_fixture(true);
    const Instance inst{&g.weights, &g.sigs, g.slotting};
    const Histogram h = compute_ccv_histogram(inst, 3);
    CHECK(h.counts.size() == 20);  // default bin count
    std::uint64_t total = 0;
    for (auto c : h.counts) total += c;
    CHECK(total == 10);  // C(5,3)

    // bounds agree with a naive enumeration of all selections
    const auto naive = oracle::from_parts(g.grid, g.weights, g.slotting.slot_count(), g.raw);
    long long lo = std::numeric_limits<long long>::max(), hi = 0;
    for (const auto& sel : oracle::all_selections(naive, 3)) {
        const auto ccv = oracle::score(naive, sel).ccv;
        lo = std::min(lo, ccv);
        hi = std::max(hi, ccv);
    }
    CHECK(h.min_ccv == lo);
    CHECK(h.max_ccv == hi);
    CHECK(h.bucket_low(0) == h.min_ccv);
    CHECK(h.bucket_high(h.counts.size() - 1) == h.max_ccv);
    for (std::size_t i = 0; i + 1 < h.counts.size(); ++i)
        CHECK(h.bucket_high(i) == h.bucket_low(i + 1));
}

TEST_CASE("bucket recounts match an independent pass over the oracle scores") {
    const fixtures::Golden g = fixtures::golden_fixture(true);
    const Instance inst{&g.weights, &g.sigs, g.slotting};
    const Histogram h = compute_ccv_histogram(inst, 2, 4);
    REQUIRE(h.counts.size() == 4);

    const auto naive = oracle::from_parts(g.grid, g.weights, g.slotting.slot_count(), g.raw);
    std::vector<std::uint64_t> recount(4, 0);
    for (const auto& sel : oracle::all_selections(naive, 2)) {
        const auto ccv = oracle::score(naive, sel).ccv;
        // equal-width binning over the real interval [min, max]: the bucket
        // of v is floor((v - min) * bins / span), the top edge closed
        const auto offset = static_cast<__int128>(ccv - h.min_ccv);
        const auto span = static_cast<__int128>(h.max_ccv - h.min_ccv);
        auto bucket = static_cast<std::size_t>(offset * 4 / span);
        if (bucket > 3) bucket = 3;
        ++recount[bucket];
    }
    for (std::size_t i = 0; i < 4; ++i) CHECK(h.counts[i] == recount[i]);
}

TEST_CASE("selecting the whole fleet collapses the histogram to one bucket") {
    const fixtures::Golden g = fixtures::golden_fixture();
    const Instance inst{&g.weights, &g.sigs, g.slotting};
    const Histogram h = compute_ccv_histogram(inst, 3);
    CHECK(h.counts == std::vector<std::uint64_t>{1});
    CHECK(h.min_ccv == 31 * kDecimalScale);
    CHECK(h.max_ccv == 31 * kDecimalScale);

    std::ostringstream csv;
    write_histogram_csv(csv, h);
    CHECK(csv.str() == "bucket_low,bucket_high,selection_count\n31,31,1\n");
}

TEST_CASE("the histogram refuses budgets its enumeration would blow") {
    const fixtures::Golden g = fixtures::golden_fixture(true);
    const Instance inst{&g.weights, &g.sigs, g.slotting};
    CHECK_THROWS_AS(compute_ccv_histogram(inst, 3, 20, 9), BudgetExceeded);  // C(5,3) = 10
    CHECK_NOTHROW(compute_ccv_histogram(inst, 3, 20, 10));
    CHECK_THROWS_AS(compute_ccv_histogram(inst, 0), std::invalid_argument);
    CHECK_THROWS_AS(compute_ccv_histogram(inst, 6), std::invalid_argument);
    CHECK_THROWS_AS(compute_ccv_histogram(inst, 2, 0), std::invalid_argument);
}

TEST_CASE("temporal coverage reports per-cell slot fractions") {
    const fixtures::Golden g = fixtures::golden_fixture();
    const CoverageReport r = compute_temporal_coverage(
        Selection({"bus1", "bus2", "bus3"}), g.sigs, g.grid, g.slotting);
    CHECK(r.total_slots == 3);
    REQUIRE(r.cells.size() == 16);

    auto at = [&](std::size_t row, std::size_t col) -> const CellCoverage& {
        return r.cells[row * 4 + col];
    };
    // cell (2,2) in matrix terms: covered in the first two slots only
    CHECK(at(1, 1).visited_slots == 2);
    CHECK(at(1, 1).fraction == 666'667);  // 2/3 rounded half up
    // cell (3,2) is covered in all three slots
    CHECK(at(2, 1).visited_slots == 3);
    CHECK(at(2, 1).fraction == kDecimalScale);
    // cell (1,1) only in the second slot
    CHECK(at(0, 0).visited_slots == 1);
    CHECK(at(0, 0).fraction == 333'333);

    // sum of visited slots over cells equals the unit-weight ccv
    std::size_t visit_sum = 0;
    for (const auto& cell : r.cells) visit_sum += cell.visited_slots;
    CHECK(visit_sum == 31);

    // the printed average is the rounded mean of the printed fractions
    std::int64_t sum = 0;
    for (const auto& cell : r.cells) sum += cell.fraction;
    const auto cells = static_cast<std::int64_t>(r.cells.size());
    CHECK(r.grid_average == (sum * 2 + cells) / (2 * cells));
    CHECK(r.grid_average == 645'834);
}

TEST_CASE("coverage CSV carries the fractions and a grid average trailer") {
    const fixtures::Golden g = fixtures::golden_fixture();
    const CoverageReport r = compute_temporal_coverage(
        Selection({"bus1", "bus2", "bus3"}), g.sigs, g.grid, g.slotting);
    std::ostringstream out;
    write_coverage_csv(out, r);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "row,col,visited_slots,total_slots,coverage");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 17);  // 16 cells plus the trailer
    CHECK(rows[0] == "0,0,1,3,0.333333");
    CHECK(rows[5] == "1,1,2,3,0.666667");
    CHECK(rows[9] == "2,1,3,3,1");
    CHECK(rows[16] == "# grid_average,0.645834");
}

TEST_CASE("a larger selection never covers any cell less often") {
    const fixtures::Golden g = fixtures::golden_fixture(true);
    const CoverageReport pair =
        compute_temporal_coverage(Selection({"bus1", "bus4"}), g.sigs, g.grid, g.slotting);
    const CoverageReport fleet = compute_temporal_coverage(
        Selection({"bus1", "bus2", "bus3", "bus4", "bus5"}), g.sigs, g.grid, g.slotting);
    for (std::size_t i = 0; i < pair.cells.size(); ++i)
        CHECK(pair.cells[i].visited_slots <= fleet.cells[i].visited_slots);
    CHECK(pair.grid_average <= fleet.grid_average);
}

TEST_CASE("temporal coverage rejects empty and unknown selections") {
    const fixtures::Golden g = fixtures::golden_fixture();
    CHECK_THROWS_WITH_AS(compute_temporal_coverage(Selection{}, g.sigs, g.grid, g.slotting),
                         doctest::Contains("selection is empty"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        compute_temporal_coverage(Selection({"ghost"}), g.sigs, g.grid, g.slotting),
        doctest::Contains("unknown agent id: ghost"), std::invalid_argument);
}
