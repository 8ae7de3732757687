#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fleetcover {

/// Flat `key = value` config file: one entry per line, `#` comments, blank
/// lines ignored. Keys are long option names without the leading dashes and
/// may repeat (for repeatable options).
std::vector<std::pair<std::string, std::string>> parse_config_file(std::istream& in);

std::vector<std::pair<std::string, std::string>> parse_config_file_at(const std::string& path);

/// Turn entries into `--key=value` tokens. Entries whose key appears in
/// `cmdline_overridden` are dropped so a repeatable flag given on the
/// command line replaces the file's list instead of appending to it; for
/// single-valued options precedence is handled downstream by take-last
/// parsing, file tokens first.
std::vector<std::string> config_tokens(
    const std::vector<std::pair<std::string, std::string>>& entries,
    const std::vector<std::string>& cmdline_overridden);

/// Name of the environment variable holding the default config path, used
/// when no --config flag is given.
inline constexpr const char* kConfigEnvVar = "FLEETCOVER_CONFIG";

}  // namespace fleetcover
