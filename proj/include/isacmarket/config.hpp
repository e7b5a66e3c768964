// Flat key = value scenario configuration.  '#' starts a comment, keys are
// matched against a fixed table and anything unknown is rejected by name.
// Missing model keys fall back to the documented defaults.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "isacmarket/statics.hpp"

namespace isac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    ModelParams params;
    SolverConfig solver;
    std::optional<SweepSpec> sweep;  // present iff sweep_* keys were given

    // demand-curve tabulation grids
    double demand_p_r_min = 1e-6;
    double demand_p_r_max = 50.0;
    int demand_p_r_steps = 200;
    double demand_r_c_min = 0.0;
    double demand_r_c_max = 20.0;
    int demand_r_c_steps = 201;
};

// Parses a configuration document.  Throws ConfigError with the offending
// key or line in the message.
ScenarioConfig parse_scenario_config(std::istream& in);

// Loads and parses a file; a missing/unreadable file raises std::ios_base::failure.
ScenarioConfig load_scenario_config(const std::string& path);

}  // namespace isac
