#pragma once

#include "greedysum/spaces.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace greedysum::cli {

enum class OutputFormat { csv, json };

/// Everything a run can take from an INI file:
///
///   [space]   kind=xpg|xw|xiso|xs plus the space parameters
///   [run]     seed, format (csv|json), output (empty = stdout)
///   [params]  command parameters by long flag name, e.g. trials=1000
struct RunConfig {
    std::optional<SpaceSpec> space;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::csv;
    std::string output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Environment variable naming a config file read when --config is absent.
inline constexpr const char* kConfigEnv = "GREEDYSUM_CONFIG";

std::string serialize(const RunConfig& config);
/// Throws std::invalid_argument on malformed INI or bad values.
RunConfig parse_config(std::string_view ini_text);
RunConfig load_config(const std::string& path);

/// Exit codes: 0 all assertions pass, 1 a witness/violation row was printed,
/// 2 usage or config error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace greedysum::cli
