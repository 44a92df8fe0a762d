#include "heatctl/report.hpp"

#include <cmath>

namespace heatctl {

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["config"] = config_echo;
    j["results"] = results;
    j["provenance"] = {{"tool", kToolName},
                       {"version", kToolVersion},
                       {"tolerance_policy", tolerance_policy},
                       {"wall_time_ms", wall_time_ms}};
    return j;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

nlohmann::json json_number_or_infinity(double v) {
    if (std::isinf(v)) return "infinity";
    return v;
}

}  // namespace heatctl
