#include "fleetcover/decimal.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace fleetcover {

namespace {

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw std::invalid_argument("bad decimal '" + std::string(text) + "': " + why);
}

}  // namespace

std::int64_t parse_decimal(std::string_view text) {
    std::string_view rest = text;
    if (rest.empty()) bad(text, "empty");

    bool negative = false;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) bad(text, "sign only");

    constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

    std::int64_t whole = 0;
    std::size_t i = 0;
    for (; i < rest.size() && rest[i] != '.'; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(rest[i]))) bad(text, "unexpected character");
        int digit = rest[i] - '0';
        if (whole > (kMax - digit) / 10) bad(text, "overflow");
        whole = whole * 10 + digit;
    }
    if (i == 0) bad(text, "missing integer digits");

    std::int64_t frac = 0;
    if (i < rest.size()) {  // at the '.'
        ++i;
        std::size_t frac_digits = 0;
        for (; i < rest.size(); ++i, ++frac_digits) {
            if (!std::isdigit(static_cast<unsigned char>(rest[i]))) bad(text, "unexpected character");
            if (frac_digits >= 6) bad(text, "more than 6 fractional digits");
            frac = frac * 10 + (rest[i] - '0');
        }
        if (frac_digits == 0) bad(text, "trailing decimal point");
        for (; frac_digits < 6; ++frac_digits) frac *= 10;
    }

    if (whole > (kMax - frac) / kDecimalScale) bad(text, "overflow");
    std::int64_t scaled = whole * kDecimalScale + frac;
    return negative ? -scaled : scaled;
}

std::string format_decimal(std::int64_t scaled) {
    std::string out;
    std::uint64_t magnitude;
    if (scaled < 0) {
        out.push_back('-');
        magnitude = std::uint64_t(0) - static_cast<std::uint64_t>(scaled);
    } else {
        magnitude = static_cast<std::uint64_t>(scaled);
    }
    out += std::to_string(magnitude / kDecimalScale);
    std::uint64_t frac = magnitude % kDecimalScale;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, 6 - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out.push_back('.');
        out += digits;
    }
    return out;
}

}  // namespace fleetcover
