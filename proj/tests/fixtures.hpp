#pragma once

// Shared instance builders: the worked 4x4 three-bus example, the
// hotspot-reduction fleet, and a seeded random-instance generator.

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fleetcover/coverage.hpp"
#include "fleetcover/geo_grid.hpp"
#include "fleetcover/trajectory.hpp"
#include "fleetcover/util.hpp"

namespace fixtures {

// 1-based matrix shorthand: m(2,1) is the cell in matrix row 2, column 1.
inline fleetcover::CellIndex m(std::size_t i, std::size_t j) { return {i - 1, j - 1}; }

// Box whose projected extent is exactly rows x cols cells of cell_m meters.
inline fleetcover::GridSpec square_grid(std::size_t rows, std::size_t cols,
                                        double cell_m = 100.0, double lat_min = 40.0,
                                        double lon_min = 23.0) {
    const double lat_extent =
        static_cast<double>(rows) * cell_m / fleetcover::kMetersPerDegreeLat;
    const double mid = lat_min + lat_extent / 2.0;
    const double m_per_deg_lon =
        fleetcover::kMetersPerDegreeLat * std::cos(mid * 3.14159265358979323846 / 180.0);
    const double lon_extent = static_cast<double>(cols) * cell_m / m_per_deg_lon;
    return fleetcover::build_grid(lat_min, lat_min + lat_extent, lon_min,
                                  lon_min + lon_extent, cell_m);
}

using SlotCells = std::vector<std::vector<fleetcover::CellIndex>>;

inline fleetcover::CoverageSignature make_sig(const fleetcover::GridSpec& grid,
                                              const std::string& id, const SlotCells& per_slot) {
    fleetcover::CoverageSignature sig;
    sig.agent_id = id;
    for (const auto& cells : per_slot) {
        fleetcover::Bitset b(grid.cell_count());
        for (auto c : cells) b.set(grid.flat_index(c));
        sig.visited.push_back(std::move(b));
    }
    return sig;
}

// Three slots of the worked example; slot unions weigh 10, 12, 9 under unit
// weights, and the three buses visit 3, 4, 5 cells in the first slot.
inline SlotCells bus1_cells() {
    return {{m(2, 1), m(3, 1), m(2, 2)},
            {m(4, 1), m(4, 2), m(3, 2), m(3, 3)},
            {m(4, 3), m(4, 4)}};
}
inline SlotCells bus2_cells() {
    return {{m(2, 2), m(3, 2), m(1, 2), m(1, 3)},
            {m(1, 4), m(2, 4), m(2, 3), m(1, 3)},
            {m(3, 3), m(3, 4), m(2, 4)}};
}
inline SlotCells bus3_cells() {
    return {{m(3, 2), m(3, 3), m(3, 4), m(4, 3), m(4, 4)},
            {m(1, 1), m(2, 1), m(1, 2), m(2, 2)},
            {m(3, 1), m(4, 1), m(4, 2), m(3, 2)}};
}

struct Golden {
    fleetcover::GridSpec grid;
    fleetcover::WeightGrid weights;
    fleetcover::TimeSlotting slotting;
    fleetcover::SignatureMap sigs;
    std::map<std::string, SlotCells> raw;
};

inline Golden golden_fixture(bool five_buses = false) {
    Golden g;
    g.grid = square_grid(4, 4);
    g.weights = fleetcover::uniform_weights(g.grid);
    g.slotting = fleetcover::TimeSlotting(1000, 1090, 30);
    auto add = [&](const std::string& id, SlotCells cells) {
        g.sigs.emplace(id, make_sig(g.grid, id, cells));
        g.raw.emplace(id, std::move(cells));
    };
    add("bus1", bus1_cells());
    add("bus2", bus2_cells());
    add("bus3", bus3_cells());
    if (five_buses) {
        add("bus4", {{m(1, 1)}, {m(4, 4)}, {m(1, 4)}});
        add("bus5", {{m(1, 4), m(2, 4)}, {m(3, 4)}, {m(1, 1), m(1, 2)}});
    }
    return g;
}

// The three bus routes encoded as a trajectory CSV: one mid-slot ping per
// visited cell, placed at the cell's center, plus one duplicate ping to
// exercise within-slot deduplication.
inline std::string golden_csv(const Golden& g) {
    std::ostringstream out;
    out << "agent_id,timestamp,lat,lon\n";
    char buf[128];
    auto emit = [&](const std::string& id, std::size_t slot, fleetcover::CellIndex cell,
                    std::int64_t skew) {
        const auto p = fleetcover::cell_center(g.grid, cell);
        const long long t =
            g.slotting.window_start +
            static_cast<long long>(slot) * g.slotting.slot_seconds + 7 + skew;
        std::snprintf(buf, sizeof buf, "%s,%lld,%.7f,%.7f\n", id.c_str(), t, p.lat, p.lon);
        out << buf;
    };
    for (const auto& [id, slots] : g.raw)
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (auto cell : slots[s]) emit(id, s, cell, 0);
    emit("bus1", 0, m(2, 1), 1);  // second ping in an already-visited cell
    return out.str();
}

// Eight agents on a 4x4 grid with hotspot cells m(1,1) and m(2,2); exactly
// v1..v5 touch a hotspot in some slot.
struct HotspotFixture {
    fleetcover::GridSpec grid;
    fleetcover::WeightGrid weights;
    fleetcover::TimeSlotting slotting;
    fleetcover::SignatureMap sigs;
    std::map<std::string, SlotCells> raw;
};

inline HotspotFixture hotspot_fixture() {
    HotspotFixture f;
    f.grid = square_grid(4, 4);
    const std::vector<fleetcover::WeightEntry> entries = {
        {m(1, 1), 5 * fleetcover::kDecimalScale},
        {m(2, 2), 3 * fleetcover::kDecimalScale},
    };
    f.weights = fleetcover::load_weights(f.grid, entries);
    f.slotting = fleetcover::TimeSlotting(0, 120, 60);
    auto add = [&](const std::string& id, SlotCells cells) {
        f.sigs.emplace(id, make_sig(f.grid, id, cells));
        f.raw.emplace(id, std::move(cells));
    };
    add("v1", {{m(1, 1), m(1, 2)}, {m(2, 1)}});
    add("v2", {{m(2, 2)}, {m(1, 1), m(3, 3)}});
    add("v3", {{m(1, 1), m(4, 4)}, {m(4, 3)}});
    add("v4", {{m(3, 1)}, {m(2, 2), m(2, 3)}});
    add("v5", {{m(2, 2), m(1, 1)}, {m(1, 2)}});
    add("v6", {{m(3, 3), m(3, 4)}, {m(4, 4)}});
    add("v7", {{m(4, 1), m(4, 2)}, {m(3, 2)}});
    add("v8", {{m(1, 3)}, {m(1, 4), m(2, 4)}});
    return f;
}

struct RandomInstance {
    fleetcover::GridSpec grid;
    fleetcover::WeightGrid weights;
    fleetcover::TimeSlotting slotting;
    fleetcover::SignatureMap sigs;
    std::vector<std::string> ids;
    std::map<std::string, SlotCells> raw;
};

// Seeded random instance; `raw` holds the cell lists both the bitset
// signatures and the naive oracle are built from.
inline RandomInstance random_instance(std::uint64_t seed, std::size_t max_agents = 10,
                                      std::size_t max_rows = 15, std::size_t max_cols = 15,
                                      std::size_t max_slots = 4) {
    std::mt19937_64 rng(seed);
    auto below = [&](std::uint64_t n) {
        return static_cast<std::size_t>(fleetcover::uniform_below(rng, n));
    };
    RandomInstance inst;
    const std::size_t rows = 2 + below(max_rows - 1);
    const std::size_t cols = 2 + below(max_cols - 1);
    const std::size_t slots = 1 + below(max_slots);
    const std::size_t n = 2 + below(max_agents - 1);
    inst.grid = square_grid(rows, cols);
    inst.weights = fleetcover::uniform_weights(inst.grid);
    for (auto& w : inst.weights.weights)
        w = static_cast<std::int64_t>(1 + below(10)) * (fleetcover::kDecimalScale / 2);
    inst.slotting = fleetcover::TimeSlotting(0, static_cast<std::int64_t>(60 * slots), 60);

    for (std::size_t a = 0; a < n; ++a) {
        char id[16];
        std::snprintf(id, sizeof id, "agent%02zu", a);
        SlotCells sc(slots);
        for (auto& cells : sc) {
            const std::size_t visits = below(1 + inst.grid.cell_count() / 3);
            for (std::size_t v = 0; v < visits; ++v)
                cells.push_back({below(rows), below(cols)});
        }
        inst.sigs.emplace(id, make_sig(inst.grid, id, sc));
        inst.raw.emplace(id, std::move(sc));
        inst.ids.emplace_back(id);
    }
    return inst;
}

}  // namespace fixtures
