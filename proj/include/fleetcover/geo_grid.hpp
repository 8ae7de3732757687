#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fleetcover/bitset.hpp"
#include "fleetcover/decimal.hpp"

namespace fleetcover {

/// Meters per degree of latitude under the equirectangular approximation.
/// Longitude degrees are scaled by cos(mid-latitude of the box). At city
/// scale (~20 km) the projection error is far below one 90 m cell.
inline constexpr double kMetersPerDegreeLat = 111'320.0;

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;
};

struct CellIndex {
    std::size_t row = 0;  // 0 = northernmost band
    std::size_t col = 0;  // 0 = westernmost band

    bool operator==(const CellIndex&) const = default;
    auto operator<=>(const CellIndex&) const = default;
};

/// A geographic bounding box discretized into rows x cols square cells.
/// Interior cells are exactly cell_size_m on each side (in the projected
/// degrees); the northernmost row and easternmost column may be trimmed to
/// the box edge when the extent is not an exact multiple, mirroring the
/// trailing partial time slot on the temporal axis.
struct GridSpec {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;
    double cell_size_m = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double lat_step_deg = 0.0;
    double lon_step_deg = 0.0;

    std::size_t cell_count() const { return rows * cols; }
    std::size_t flat_index(CellIndex c) const { return c.row * cols + c.col; }
};

/// Throws std::invalid_argument on a degenerate box (zero extent), a box
/// outside WGS84 range or touching the poles, or a non-positive cell size.
GridSpec build_grid(double lat_min, double lat_max, double lon_min, double lon_max,
                    double cell_size_m);

/// Map a point to the unique cell whose half-open interval
/// [west, east) x [south, north) contains it. Points on the far north/east
/// boundary of the box belong to the adjacent row/col. Out-of-box points
/// return nullopt; callers count them, it is not an error.
std::optional<CellIndex> locate(const GridSpec& grid, double lat, double lon);

/// Center of the cell's effective rectangle (trimmed rows/cols use their
/// trimmed bounds, so the center always locates back to the same cell).
LatLon cell_center(const GridSpec& grid, CellIndex cell);

/// Per-cell importance weights, stored as exact scaled decimals.
/// Hotspots are the cells with weight strictly above hotspot_threshold.
struct WeightGrid {
    GridSpec grid;
    std::vector<std::int64_t> weights;  // row-major, scaled by kDecimalScale
    std::int64_t hotspot_threshold = kDecimalScale;

    std::int64_t at(CellIndex c) const { return weights[grid.flat_index(c)]; }
    bool is_hotspot(CellIndex c) const { return at(c) > hotspot_threshold; }

    Bitset hotspot_mask() const;
    std::size_t hotspot_count() const;

    /// Copy with every non-hotspot cell's weight forced to zero; the search
    /// grid of the hotspot-restricted solver.
    WeightGrid masked_to_hotspots() const;
};

/// All cells at weight 1 (the unweighted case).
WeightGrid uniform_weights(GridSpec grid, std::int64_t hotspot_threshold = kDecimalScale);

struct WeightEntry {
    std::variant<CellIndex, LatLon> where;
    std::int64_t weight = 0;  // scaled
};

/// Default every cell to 1, then overwrite the listed entries. Point entries
/// resolve through locate. A negative weight or an out-of-grid entry is
/// rejected with the index of the offending entry.
WeightGrid load_weights(const GridSpec& grid, std::span<const WeightEntry> entries,
                        std::int64_t hotspot_threshold = kDecimalScale);

/// CSV with header `row,col,weight` or `lat,lon,weight` (variant chosen by
/// the header), one entry per line; unlisted cells default to 1.
WeightGrid load_weights_csv(std::istream& in, const GridSpec& grid,
                            std::int64_t hotspot_threshold = kDecimalScale);
WeightGrid load_weights_csv_file(const std::string& path, const GridSpec& grid,
                                 std::int64_t hotspot_threshold = kDecimalScale);

}  // namespace fleetcover
