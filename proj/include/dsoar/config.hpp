#pragma once

#include <stdexcept>
#include <string>

#include "dsoar/sim.hpp"

namespace dsoar {

/// Thrown on malformed run-configuration documents (unknown keys, missing
/// required fields, wrong types or shapes).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a JSON run-configuration document into a Scenario. The schema
/// mirrors Scenario; unspecified fields take the module defaults and unknown
/// keys are rejected. See docs/config-schema.md for the full layout.
Scenario scenario_from_json(const std::string& text);

/// Scenario -> JSON round-trip of the same schema (used by `list --format
/// json` and for documenting the built-ins).
std::string scenario_to_json(const Scenario& sc);

}  // namespace dsoar
