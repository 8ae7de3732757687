#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fleetcover/bitset.hpp"
#include "fleetcover/geo_grid.hpp"

namespace fleetcover {

struct Ping {
    std::string agent_id;
    std::int64_t timestamp = 0;  // Unix seconds, UTC
    double lat = 0.0;
    double lon = 0.0;
};

/// Discretization of the sensing window into half-open slots
/// [start + k*d, start + (k+1)*d); the trailing slot may be shorter but is
/// a real slot.
struct TimeSlotting {
    std::int64_t window_start = 0;  // Unix seconds
    std::int64_t window_end = 0;
    std::int64_t slot_seconds = 0;

    TimeSlotting() = default;
    TimeSlotting(std::int64_t start, std::int64_t end, std::int64_t slot_duration);

    std::size_t slot_count() const;

    /// floor((t - start) / duration) for t in [start, end); nullopt outside
    /// the window (the window itself is half-open, so t == end is outside).
    std::optional<std::size_t> slot_index(std::int64_t t) const;
};

/// One agent's per-slot visited-cell sets; the entire optimization runs on
/// these. Independent of ping order in the input by construction.
struct CoverageSignature {
    std::string agent_id;
    std::vector<Bitset> visited;  // one fixed-universe bitset per slot
};

using SignatureMap = std::map<std::string, CoverageSignature>;

struct IngestStats {
    std::uint64_t records_read = 0;  // data lines encountered, malformed included
    std::uint64_t pings_assigned = 0;
    std::uint64_t dropped_out_of_bounds = 0;
    std::uint64_t dropped_out_of_window = 0;
    std::uint64_t rejected_malformed = 0;
};

struct IngestResult {
    SignatureMap signatures;
    IngestStats stats;
};

/// Parse a timestamp field: ISO-8601 with offset ("2018-10-02T09:00:00-04:00",
/// "...Z") or integer Unix epoch seconds. Fractional seconds are floored.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

/// Epoch timestamps are bare integers; anything else is treated as ISO-8601.
/// The trajectory reader fixes the mode per file from the first data row.
bool looks_like_epoch(std::string_view text);

/// Read trajectory CSV (header `agent_id,timestamp,lat,lon`) and compile one
/// coverage signature per agent. Malformed data lines are skipped and
/// counted; an unreadable stream or a bad header is a hard error.
IngestResult ingest(std::istream& in, const GridSpec& grid, const TimeSlotting& slotting);

IngestResult ingest_file(const std::string& path, const GridSpec& grid,
                         const TimeSlotting& slotting);

/// Ingest several files into one result; an agent appearing in multiple
/// files gets the union of its visits.
IngestResult ingest_files(const std::vector<std::string>& paths, const GridSpec& grid,
                          const TimeSlotting& slotting);

}  // namespace fleetcover
