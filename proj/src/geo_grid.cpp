#include "fleetcover/geo_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fleetcover/util.hpp"

namespace fleetcover {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ceil with a small absolute guard so a box constructed as an exact multiple
// of the cell size does not gain a phantom row from one ulp of noise.
std::size_t ceil_cells(double extent_m, double cell_size_m) {
    double q = extent_m / cell_size_m;
    double cells = std::ceil(q - 1e-9);
    return cells < 1.0 ? 1 : static_cast<std::size_t>(cells);
}

}  // namespace

GridSpec build_grid(double lat_min, double lat_max, double lon_min, double lon_max,
                    double cell_size_m) {
    if (!(cell_size_m > 0.0))
        throw std::invalid_argument("cell_size_m must be positive");
    if (!(lat_min < lat_max) || !(lon_min < lon_max))
        throw std::invalid_argument("invalid region: bounding box has zero or negative extent");
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0)
        throw std::invalid_argument("invalid region: outside WGS84 bounds");

    const double mid_lat = (lat_min + lat_max) / 2.0;
    const double cos_mid = std::cos(mid_lat * kPi / 180.0);
    if (cos_mid < 1e-6)
        throw std::invalid_argument("invalid region: box touches a pole");

    GridSpec grid;
    grid.lat_min = lat_min;
    grid.lat_max = lat_max;
    grid.lon_min = lon_min;
    grid.lon_max = lon_max;
    grid.cell_size_m = cell_size_m;

    const double ns_extent_m = (lat_max - lat_min) * kMetersPerDegreeLat;
    const double ew_extent_m = (lon_max - lon_min) * kMetersPerDegreeLat * cos_mid;
    grid.rows = ceil_cells(ns_extent_m, cell_size_m);
    grid.cols = ceil_cells(ew_extent_m, cell_size_m);
    grid.lat_step_deg = cell_size_m / kMetersPerDegreeLat;
    grid.lon_step_deg = cell_size_m / (kMetersPerDegreeLat * cos_mid);
    return grid;
}

std::optional<CellIndex> locate(const GridSpec& grid, double lat, double lon) {
    if (lat < grid.lat_min || lat > grid.lat_max || lon < grid.lon_min || lon > grid.lon_max)
        return std::nullopt;
    auto band = [](double offset, double step, std::size_t count) {
        double idx = std::floor(offset / step);
        if (idx < 0.0) return std::size_t{0};
        return std::min(static_cast<std::size_t>(idx), count - 1);
    };
    std::size_t row_from_south = band(lat - grid.lat_min, grid.lat_step_deg, grid.rows);
    std::size_t col = band(lon - grid.lon_min, grid.lon_step_deg, grid.cols);
    return CellIndex{grid.rows - 1 - row_from_south, col};
}

LatLon cell_center(const GridSpec& grid, CellIndex cell) {
    if (cell.row >= grid.rows || cell.col >= grid.cols)
        throw std::out_of_range("cell_center: cell outside grid");
    std::size_t row_from_south = grid.rows - 1 - cell.row;
    double south = grid.lat_min + static_cast<double>(row_from_south) * grid.lat_step_deg;
    double north = std::min(south + grid.lat_step_deg, grid.lat_max);
    double west = grid.lon_min + static_cast<double>(cell.col) * grid.lon_step_deg;
    double east = std::min(west + grid.lon_step_deg, grid.lon_max);
    return {(south + north) / 2.0, (west + east) / 2.0};
}

Bitset WeightGrid::hotspot_mask() const {
    Bitset mask(grid.cell_count());
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] > hotspot_threshold) mask.set(i);
    return mask;
}

std::size_t WeightGrid::hotspot_count() const {
    std::size_t n = 0;
    for (auto w : weights)
        if (w > hotspot_threshold) ++n;
    return n;
}

WeightGrid WeightGrid::masked_to_hotspots() const {
    WeightGrid masked = *this;
    for (auto& w : masked.weights)
        if (w <= hotspot_threshold) w = 0;
    return masked;
}

WeightGrid uniform_weights(GridSpec grid, std::int64_t hotspot_threshold) {
    WeightGrid wg;
    wg.grid = grid;
    wg.weights.assign(grid.cell_count(), kDecimalScale);
    wg.hotspot_threshold = hotspot_threshold;
    return wg;
}

WeightGrid load_weights(const GridSpec& grid, std::span<const WeightEntry> entries,
                        std::int64_t hotspot_threshold) {
    WeightGrid wg = uniform_weights(grid, hotspot_threshold);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const WeightEntry& entry = entries[i];
        if (entry.weight < 0)
            throw std::invalid_argument("weight entry " + std::to_string(i) +
                                        ": negative weight");
        CellIndex cell;
        if (const CellIndex* idx = std::get_if<CellIndex>(&entry.where)) {
            if (idx->row >= grid.rows || idx->col >= grid.cols)
                throw std::invalid_argument("weight entry " + std::to_string(i) +
                                            ": cell outside grid");
            cell = *idx;
        } else {
            const LatLon& p = std::get<LatLon>(entry.where);
            auto located = locate(grid, p.lat, p.lon);
            if (!located)
                throw std::invalid_argument("weight entry " + std::to_string(i) +
                                            ": point outside grid");
            cell = *located;
        }
        wg.weights[grid.flat_index(cell)] = entry.weight;
    }
    return wg;
}

namespace {

std::string strip_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double_field(const std::string& field, std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        std::string trimmed = trim(field);
        double value = std::stod(trimmed, &used);
        if (used != trimmed.size()) throw std::invalid_argument("junk");
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("weights line " + std::to_string(line_no) + ": bad " + what +
                                 " '" + field + "'");
    }
}

}  // namespace

WeightGrid load_weights_csv(std::istream& in, const GridSpec& grid,
                            std::int64_t hotspot_threshold) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("weights file: empty (missing header)");
    line = strip_line(line);
    if (!line.empty() && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

    auto header = split(line, ',');
    bool by_cell;
    if (header.size() == 3 && iequals(trim(header[0]), "row") &&
        iequals(trim(header[1]), "col") && iequals(trim(header[2]), "weight")) {
        by_cell = true;
    } else if (header.size() == 3 && iequals(trim(header[0]), "lat") &&
               iequals(trim(header[1]), "lon") && iequals(trim(header[2]), "weight")) {
        by_cell = false;
    } else {
        throw std::runtime_error("weights file: header must be row,col,weight or lat,lon,weight");
    }

    std::vector<WeightEntry> entries;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_line(line);
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 3)
            throw std::runtime_error("weights line " + std::to_string(line_no) +
                                     ": expected 3 fields");
        WeightEntry entry;
        try {
            entry.weight = parse_decimal(trim(fields[2]));
        } catch (const std::exception& e) {
            throw std::runtime_error("weights line " + std::to_string(line_no) + ": " + e.what());
        }
        if (by_cell) {
            double row = parse_double_field(fields[0], line_no, "row");
            double col = parse_double_field(fields[1], line_no, "col");
            if (row < 0 || col < 0 || row != std::floor(row) || col != std::floor(col))
                throw std::runtime_error("weights line " + std::to_string(line_no) +
                                         ": row/col must be non-negative integers");
            entry.where = CellIndex{static_cast<std::size_t>(row), static_cast<std::size_t>(col)};
        } else {
            entry.where = LatLon{parse_double_field(fields[0], line_no, "lat"),
                                 parse_double_field(fields[1], line_no, "lon")};
        }
        entries.push_back(entry);
    }
    try {
        return load_weights(grid, entries, hotspot_threshold);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("weights file: ") + e.what());
    }
}

WeightGrid load_weights_csv_file(const std::string& path, const GridSpec& grid,
                                 std::int64_t hotspot_threshold) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file: " + path);
    return load_weights_csv(in, grid, hotspot_threshold);
}

}  // namespace fleetcover
