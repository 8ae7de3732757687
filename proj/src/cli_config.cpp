#include "fleetcover/cli_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fleetcover/util.hpp"

namespace fleetcover {

std::vector<std::pair<std::string, std::string>> parse_config_file(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value, got \"" + stripped + "\"");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

std::vector<std::pair<std::string, std::string>> parse_config_file_at(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config_file(in);
}

std::vector<std::string> config_tokens(
    const std::vector<std::pair<std::string, std::string>>& entries,
    const std::vector<std::string>& cmdline_overridden) {
    std::vector<std::string> tokens;
    for (const auto& [key, value] : entries) {
        if (std::find(cmdline_overridden.begin(), cmdline_overridden.end(), key) !=
            cmdline_overridden.end())
            continue;
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

}  // namespace fleetcover
