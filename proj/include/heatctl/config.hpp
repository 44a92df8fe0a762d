#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heatctl/errors.hpp"
#include "heatctl/spectral.hpp"
#include "heatctl/synthesis.hpp"

namespace heatctl {

/// Validation failure carrying the path of the offending config field.
class ConfigError : public ValidationError {
  public:
    ConfigError(const std::string& path, const std::string& message)
        : ValidationError(path + ": " + message), path_(path) {}

    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

enum class Task { analyze, simulate, steer_approx, steer_null, steer_ode, reproduce };

std::string task_name(Task t);

/// A state (or per-impulse control) given either by name or by explicit
/// spectral coefficients. Resolved against the domain truncation and the
/// required component count.
struct Profile {
    enum class Kind { zero, single_mode, constant, bump, coefficients };
    Kind kind = Kind::zero;
    std::size_t mode = 1;            // single-mode
    std::vector<double> amplitude;   // per component (single-mode/constant/bump)
    double center = 0.0;             // bump
    double width = 0.0;              // bump
    std::vector<std::vector<double>> coefficients;  // explicit, modes x components

    Matrix realize(const DomainSpec& domain, std::size_t components,
                   const std::string& path) const;
};

struct ScenarioConfig {
    Task task = Task::analyze;
    std::optional<ControlPair> system;
    DomainSpec domain;
    std::optional<ImpulseSchedule> schedule;
    std::optional<Profile> initial;
    std::optional<Profile> target;
    std::vector<Profile> controls;        // simulate payload, one per instant
    std::vector<double> z0, z1;           // steer-ode payload
    std::string reproduce_name;
    RotationObstructionParams reproduce_params;
    std::optional<double> rank_absolute;  // tolerance override
    std::size_t csv_samples = 100;
    std::uint64_t seed = 12345;

    RankTolerance rank_tolerance() const {
        return rank_absolute ? RankTolerance::absolute_tol(*rank_absolute)
                             : RankTolerance::relative();
    }
};

/// Parses and validates a config document. Throws ConfigError naming the
/// first offending field.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_text(const std::string& text);

/// Serializes a config back to JSON. parse(serialize(parse(text))) is
/// field-for-field identical to parse(text).
nlohmann::json config_to_json(const ScenarioConfig& cfg);

}  // namespace heatctl
