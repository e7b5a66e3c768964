#include "isacmarket/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string_view>

namespace isac {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view key, std::string_view value) {
    double out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("invalid numeric value for key '" + std::string(key) + "': '" +
                          std::string(value) + "'");
    return out;
}

int parse_int(std::string_view key, std::string_view value) {
    int out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("invalid integer value for key '" + std::string(key) + "': '" +
                          std::string(value) + "'");
    return out;
}

struct SweepKeys {
    std::optional<std::string> parameter;
    std::optional<double> start, stop;
    std::optional<int> steps;
    bool any() const { return parameter || start || stop || steps; }
};

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
    ScenarioConfig cfg;
    SweepKeys sweep;

    const std::map<std::string_view, std::function<void(std::string_view, std::string_view)>>
        handlers = {
            {"gamma", [&](auto k, auto v) { cfg.params.gamma = parse_double(k, v); }},
            {"gamma_T", [&](auto k, auto v) { cfg.params.gamma_T = parse_double(k, v); }},
            {"gamma_C", [&](auto k, auto v) { cfg.params.gamma_C = parse_double(k, v); }},
            {"alpha", [&](auto k, auto v) { cfg.params.alpha = parse_double(k, v); }},
            {"beta", [&](auto k, auto v) { cfg.params.beta = parse_double(k, v); }},
            {"w_p", [&](auto k, auto v) { cfg.params.w_p = parse_double(k, v); }},
            {"w_w", [&](auto k, auto v) { cfg.params.w_w = parse_double(k, v); }},
            {"p_r_min", [&](auto k, auto v) { cfg.solver.p_r_lo = parse_double(k, v); }},
            {"p_r_max", [&](auto k, auto v) { cfg.solver.p_r_hi = parse_double(k, v); }},
            {"p_c_min", [&](auto k, auto v) { cfg.solver.pc_lo = parse_double(k, v); }},
            {"p_c_max", [&](auto k, auto v) { cfg.solver.pc_hi = parse_double(k, v); }},
            {"w_c_min", [&](auto k, auto v) { cfg.solver.wc_lo = parse_double(k, v); }},
            {"w_c_max", [&](auto k, auto v) { cfg.solver.wc_hi = parse_double(k, v); }},
            {"rel_tol", [&](auto k, auto v) { cfg.solver.rel_tol = parse_double(k, v); }},
            {"foc_tol", [&](auto k, auto v) { cfg.solver.foc_tol = parse_double(k, v); }},
            {"oracle_grid", [&](auto k, auto v) { cfg.solver.oracle_grid = parse_int(k, v); }},
            {"oracle_refine_rounds",
             [&](auto k, auto v) { cfg.solver.oracle_refine_rounds = parse_int(k, v); }},
            {"scan_points", [&](auto k, auto v) { cfg.solver.scan_points = parse_int(k, v); }},
            {"sweep_parameter", [&](auto, auto v) { sweep.parameter = std::string(v); }},
            {"sweep_start", [&](auto k, auto v) { sweep.start = parse_double(k, v); }},
            {"sweep_stop", [&](auto k, auto v) { sweep.stop = parse_double(k, v); }},
            {"sweep_steps", [&](auto k, auto v) { sweep.steps = parse_int(k, v); }},
            {"demand_p_r_min", [&](auto k, auto v) { cfg.demand_p_r_min = parse_double(k, v); }},
            {"demand_p_r_max", [&](auto k, auto v) { cfg.demand_p_r_max = parse_double(k, v); }},
            {"demand_p_r_steps", [&](auto k, auto v) { cfg.demand_p_r_steps = parse_int(k, v); }},
            {"demand_r_c_min", [&](auto k, auto v) { cfg.demand_r_c_min = parse_double(k, v); }},
            {"demand_r_c_max", [&](auto k, auto v) { cfg.demand_r_c_max = parse_double(k, v); }},
            {"demand_r_c_steps", [&](auto k, auto v) { cfg.demand_r_c_steps = parse_int(k, v); }},
        };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = line;
        if (const auto hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty())
            continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(sv) + "'");
        const std::string_view key = trim(sv.substr(0, eq));
        const std::string_view value = trim(sv.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end())
            throw ConfigError("unknown configuration key: " + std::string(key));
        it->second(key, value);
    }

    try {
        cfg.params.validate();
        cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (sweep.any()) {
        if (!sweep.parameter)
            throw ConfigError("sweep configuration requires sweep_parameter");
        if (!sweep.start || !sweep.stop || !sweep.steps)
            throw ConfigError("sweep configuration requires sweep_start, sweep_stop and sweep_steps");
        SweepSpec spec;
        try {
            spec.parameter = sweep_parameter_from_string(*sweep.parameter);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        spec.start = *sweep.start;
        spec.stop = *sweep.stop;
        spec.steps = *sweep.steps;
        spec.base = cfg.params;
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        cfg.sweep = spec;
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open configuration file: " + path);
    return parse_scenario_config(in);
}

}  // namespace isac
