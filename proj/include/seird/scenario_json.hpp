#pragma once

#include <json.hpp>

#include "seird/errors.hpp"
#include "seird/scenarios.hpp"

namespace seird {

nlohmann::json scenario_to_json(const Scenario& s);
/// Strict: unknown keys and wrong types raise ConfigError naming the key path.
Scenario scenario_from_json(const nlohmann::json& doc, const std::string& path = "scenario");

} // namespace seird
