#include "fleetcover/trajectory.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fleetcover/util.hpp"

namespace fleetcover {

TimeSlotting::TimeSlotting(std::int64_t start, std::int64_t end, std::int64_t slot_duration)
    : window_start(start), window_end(end), slot_seconds(slot_duration) {
    if (end <= start) throw std::invalid_argument("time window must end after it starts");
    if (slot_duration <= 0) throw std::invalid_argument("slot duration must be positive");
}

std::size_t TimeSlotting::slot_count() const {
    return static_cast<std::size_t>((window_end - window_start + slot_seconds - 1) /
                                    slot_seconds);
}

std::optional<std::size_t> TimeSlotting::slot_index(std::int64_t t) const {
    if (t < window_start || t >= window_end) return std::nullopt;
    return static_cast<std::size_t>((t - window_start) / slot_seconds);
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool leap_year(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return lengths[m - 1];
}

bool read_digits(std::string_view& s, std::size_t count, std::int64_t& out) {
    if (s.size() < count) return false;
    out = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        out = out * 10 + (s[i] - '0');
    }
    s.remove_prefix(count);
    return true;
}

bool consume(std::string_view& s, char c) {
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

}  // namespace

bool looks_like_epoch(std::string_view text) {
    if (text.empty()) return false;
    std::size_t i = text.front() == '-' ? 1 : 0;
    if (i == text.size()) return false;
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
    if (looks_like_epoch(text)) {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
        return value;
    }

    std::string_view s = text;
    std::int64_t year, month, day, hour, minute, second;
    if (!read_digits(s, 4, year)) return std::nullopt;
    if (!consume(s, '-') || !read_digits(s, 2, month)) return std::nullopt;
    if (!consume(s, '-') || !read_digits(s, 2, day)) return std::nullopt;
    if (s.empty() || (s.front() != 'T' && s.front() != 't' && s.front() != ' '))
        return std::nullopt;
    s.remove_prefix(1);
    if (!read_digits(s, 2, hour)) return std::nullopt;
    if (!consume(s, ':') || !read_digits(s, 2, minute)) return std::nullopt;
    if (!consume(s, ':') || !read_digits(s, 2, second)) return std::nullopt;

    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || day > days_in_month(year, static_cast<unsigned>(month))) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

    // Fractional seconds: parsed and floored away (pings are second-resolution).
    if (!s.empty() && s.front() == '.') {
        s.remove_prefix(1);
        std::size_t digits = 0;
        while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }

    std::int64_t offset_seconds = 0;
    if (s.empty()) return std::nullopt;  // offset is required
    if (s == "Z" || s == "z") {
        s = {};
    } else {
        int sign = s.front() == '+' ? 1 : s.front() == '-' ? -1 : 0;
        if (sign == 0) return std::nullopt;
        s.remove_prefix(1);
        std::int64_t oh, om = 0;
        if (!read_digits(s, 2, oh)) return std::nullopt;
        if (!s.empty()) {
            consume(s, ':');
            if (!read_digits(s, 2, om)) return std::nullopt;
        }
        if (!s.empty()) return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset_seconds = sign * (oh * 3600 + om * 60);
    }
    if (!s.empty()) return std::nullopt;

    std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                        static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
}

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::optional<double> parse_coord(std::string_view field, double lo, double hi) {
    std::string t = trim(field);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    if (!(value >= lo && value <= hi)) return std::nullopt;
    return value;
}

}  // namespace

IngestResult ingest(std::istream& in, const GridSpec& grid, const TimeSlotting& slotting) {
    if (!in) throw std::runtime_error("trajectory stream unreadable");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("trajectory file: empty (missing header)");
    line = strip_cr(line);
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    auto header = split(line, ',');
    if (header.size() != 4 || !iequals(trim(header[0]), "agent_id") ||
        !iequals(trim(header[1]), "timestamp") || !iequals(trim(header[2]), "lat") ||
        !iequals(trim(header[3]), "lon"))
        throw std::runtime_error("trajectory file: header must be agent_id,timestamp,lat,lon");

    IngestResult result;
    const std::size_t slots = slotting.slot_count();
    const std::size_t cells = grid.cell_count();

    // Timestamp format is fixed per file from the first data row.
    bool format_known = false;
    bool epoch_format = false;

    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (trim(line).empty()) continue;
        ++result.stats.records_read;

        auto fields = split(line, ',');
        if (fields.size() != 4) {
            ++result.stats.rejected_malformed;
            continue;
        }
        std::string agent_id = trim(fields[0]);
        std::string ts_text = trim(fields[1]);
        if (agent_id.empty()) {
            ++result.stats.rejected_malformed;
            continue;
        }
        if (!format_known) {
            epoch_format = looks_like_epoch(ts_text);
            format_known = true;
        }
        if (looks_like_epoch(ts_text) != epoch_format) {
            ++result.stats.rejected_malformed;
            continue;
        }
        auto timestamp = parse_timestamp(ts_text);
        auto lat = parse_coord(fields[2], -90.0, 90.0);
        auto lon = parse_coord(fields[3], -180.0, 180.0);
        if (!timestamp || !lat || !lon) {
            ++result.stats.rejected_malformed;
            continue;
        }

        auto slot = slotting.slot_index(*timestamp);
        if (!slot) {
            ++result.stats.dropped_out_of_window;
            continue;
        }
        auto cell = locate(grid, *lat, *lon);
        if (!cell) {
            ++result.stats.dropped_out_of_bounds;
            continue;
        }

        auto [it, inserted] = result.signatures.try_emplace(agent_id);
        if (inserted) {
            it->second.agent_id = agent_id;
            it->second.visited.assign(slots, Bitset(cells));
        }
        it->second.visited[*slot].set(grid.flat_index(*cell));
        ++result.stats.pings_assigned;
    }
    return result;
}

IngestResult ingest_file(const std::string& path, const GridSpec& grid,
                         const TimeSlotting& slotting) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    return ingest(in, grid, slotting);
}

IngestResult ingest_files(const std::vector<std::string>& paths, const GridSpec& grid,
                          const TimeSlotting& slotting) {
    IngestResult merged;
    for (const auto& path : paths) {
        IngestResult one = ingest_file(path, grid, slotting);
        for (auto& [id, sig] : one.signatures) {
            auto [it, inserted] = merged.signatures.try_emplace(id, std::move(sig));
            if (!inserted)
                for (std::size_t k = 0; k < it->second.visited.size(); ++k)
                    it->second.visited[k] |= sig.visited[k];
        }
        merged.stats.records_read += one.stats.records_read;
        merged.stats.pings_assigned += one.stats.pings_assigned;
        merged.stats.dropped_out_of_bounds += one.stats.dropped_out_of_bounds;
        merged.stats.dropped_out_of_window += one.stats.dropped_out_of_window;
        merged.stats.rejected_malformed += one.stats.rejected_malformed;
    }
    return merged;
}

}  // namespace fleetcover
