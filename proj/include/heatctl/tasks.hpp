#pragma once

#include <optional>
#include <string>

#include "heatctl/config.hpp"
#include "heatctl/report.hpp"

namespace heatctl {

struct TaskOutcome {
    Report report;
    // False only when a reproduce assertion failed (CLI exit code 3).
    bool reproduce_ok = true;
    // Trajectory CSV text for the tasks that simulate one.
    std::optional<std::string> trajectory_csv;
};

TaskOutcome run_task(const ScenarioConfig& cfg);

}  // namespace heatctl
