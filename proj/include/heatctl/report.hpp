#pragma once

#include <string>

#include <json.hpp>

namespace heatctl {

inline constexpr const char* kToolName = "heatctl";
inline constexpr const char* kToolVersion = "0.1.0";

/// One run, one report: an echo of the config, task-specific results, and
/// provenance. Numeric result fields are deterministic for a fixed config;
/// only provenance.wall_time_ms varies between runs.
struct Report {
    nlohmann::json config_echo;
    nlohmann::json results;
    std::string tolerance_policy;
    double wall_time_ms = 0.0;

    nlohmann::json to_json() const;
    std::string to_string() const;
};

/// Encodes a possibly infinite value: numbers stay numbers, +inf becomes
/// the string "infinity" (JSON has no infinities).
nlohmann::json json_number_or_infinity(double v);

}  // namespace heatctl
