#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fleetcover {

/// All weights and coverage scores are exact rationals with a fixed
/// denominator of 10^6, stored as scaled 64-bit integers. Score equality
/// and tie-breaking are therefore exact, never subject to float rounding.
inline constexpr std::int64_t kDecimalScale = 1'000'000;

/// Parse a plain decimal string ("8", "2.5", "-0.25") into a scaled integer.
/// At most six fractional digits are representable; anything beyond that,
/// scientific notation, or trailing junk is rejected.
/// Throws std::invalid_argument on malformed input or overflow.
std::int64_t parse_decimal(std::string_view text);

/// Format a scaled integer back to its shortest decimal form ("31", "2.5").
std::string format_decimal(std::int64_t scaled);

}  // namespace fleetcover
