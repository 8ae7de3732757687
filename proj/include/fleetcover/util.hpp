#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fleetcover {

/// splitmix64 step; used to derive independent per-agent seeds from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform integer in [0, n) drawn by rejection from raw 64-bit output.
/// std::uniform_int_distribution is implementation-defined, so seeded runs
/// would not be reproducible across standard libraries; this is.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::logic_error("uniform_below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Advance strictly increasing positions into [0, universe_size) to the next
/// combination in lexicographic order; false once exhausted.
inline bool next_combination(std::vector<std::uint32_t>& pos, std::size_t universe_size) {
    const std::size_t k = pos.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (pos[i] < i + universe_size - k) {
            ++pos[i];
            for (std::size_t j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// C(n, k), or nullopt once the count exceeds `cap` (or 2^64-1).
std::optional<std::uint64_t> combination_count(std::uint64_t n, std::uint64_t k,
                                               std::uint64_t cap = std::numeric_limits<std::uint64_t>::max());

/// C(n, k) as text for error messages; exact when it fits 64 bits,
/// otherwise a scientific approximation ("about 1.03e+54").
std::string combination_count_text(std::uint64_t n, std::uint64_t k);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view line, char sep);

/// Case-insensitive ASCII comparison, used for CSV header matching.
bool iequals(std::string_view a, std::string_view b);

}  // namespace fleetcover
