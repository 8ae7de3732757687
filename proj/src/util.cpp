#include "fleetcover/util.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fleetcover {

std::optional<std::uint64_t> combination_count(std::uint64_t n, std::uint64_t k,
                                               std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    const unsigned __int128 bound = cap;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // C(n, i) = C(n, i-1) * (n - i + 1) / i, always divides exactly
        result = result * (n - i + 1) / i;
        if (result > bound) return std::nullopt;
    }
    return static_cast<std::uint64_t>(result);
}

std::string combination_count_text(std::uint64_t n, std::uint64_t k) {
    if (auto exact = combination_count(n, k)) return std::to_string(*exact);
    long double value = 0.0L;  // accumulate in log space, the count is astronomical
    for (std::uint64_t i = 1; i <= std::min(k, n - k); ++i)
        value += std::log10(static_cast<long double>(n - i + 1)) -
                 std::log10(static_cast<long double>(i));
    long double mantissa = std::pow(10.0L, value - std::floor(value));
    char buf[64];
    std::snprintf(buf, sizeof buf, "about %.2Lfe+%.0Lf", mantissa, std::floor(value));
    return buf;
}

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

}  // namespace fleetcover
