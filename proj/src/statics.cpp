#include "isacmarket/statics.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

std::string_view to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::w_p: return "w_p";
        case SweepParameter::w_w: return "w_w";
        case SweepParameter::alpha: return "alpha";
    }
    return "?";
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
    if (name == "w_p") return SweepParameter::w_p;
    if (name == "w_w") return SweepParameter::w_w;
    if (name == "alpha") return SweepParameter::alpha;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected w_p, w_w or alpha)");
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::increasing: return "increasing";
        case Direction::decreasing: return "decreasing";
        case Direction::constant: return "constant";
        case Direction::non_monotone: return "non-monotone";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (!(start > 0.0))
        throw std::invalid_argument("SweepSpec: start must be > 0");
    if (!(start < stop))
        throw std::invalid_argument("SweepSpec: start must be < stop");
    if (steps < 2)
        throw std::invalid_argument("SweepSpec: steps must be >= 2");
    base.validate();
}

double sweep_output_value(const Equilibrium& eq, int output_index) {
    switch (output_index) {
        case 0: return eq.P_r_star;
        case 1: return eq.P_c_star;
        case 2: return eq.W_c_star;
        case 3: return eq.R_c_star;
        case 4: return eq.p1;
        case 5: return eq.p2;
        case 6: return eq.theta;
        case 7: return eq.eta;
        case 8: return eq.profit;
    }
    throw std::out_of_range("sweep_output_value: bad output index");
}

namespace {

ModelParams with_parameter(const ModelParams& base, SweepParameter p, double value) {
    ModelParams out = base;
    switch (p) {
        case SweepParameter::w_p: out.w_p = value; break;
        case SweepParameter::w_w: out.w_w = value; break;
        case SweepParameter::alpha: out.alpha = value; break;
    }
    return out;
}

SweepPoint solve_point(const SweepSpec& spec, const SolverConfig& cfg, double value) {
    SweepPoint pt;
    pt.value = value;
    try {
        pt.eq = solve_equilibrium(with_parameter(spec.base, spec.parameter, value), cfg);
        pt.solved = true;
    } catch (const std::exception& e) {
        pt.solved = false;
        pt.error = e.what();
    }
    return pt;
}

void finalize(SweepResult& result) {
    result.monotonicity = summarize_monotonicity(result);
    result.gap_count = 0;
    result.validity_violations.clear();
    for (const SweepPoint& pt : result.points) {
        if (!pt.solved) {
            ++result.gap_count;
            continue;
        }
        if (!pt.eq.sensing_demand_valid)
            result.validity_violations.push_back(pt.value);
    }
}

std::vector<double> grid_values(const SweepSpec& spec) {
    std::vector<double> values(spec.steps);
    const double step = (spec.stop - spec.start) / (spec.steps - 1);
    for (int i = 0; i < spec.steps; ++i)
        values[i] = spec.start + step * i;
    values.back() = spec.stop;
    return values;
}

}  // namespace

SweepResult run_sweep_serial(const SweepSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    cfg.validate();
    SweepResult result;
    result.spec = spec;
    const auto values = grid_values(spec);
    result.points.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        result.points[i] = solve_point(spec, cfg, values[i]);
    finalize(result);
    return result;
}

SweepResult run_sweep(const SweepSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    cfg.validate();
    SweepResult result;
    result.spec = spec;
    const auto values = grid_values(spec);
    result.points.resize(values.size());
    const int n = static_cast<int>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i)
        result.points[i] = solve_point(spec, cfg, values[i]);
    finalize(result);
    return result;
}

std::array<DirectionSummary, kSweepOutputs.size()> summarize_monotonicity(
    const SweepResult& result) {
    std::array<DirectionSummary, kSweepOutputs.size()> table{};
    for (std::size_t out = 0; out < kSweepOutputs.size(); ++out) {
        bool any_up = false, any_down = false;
        double turning = 0.0;
        bool have_turning = false;
        int prev = -1;
        for (int i = 0; i < static_cast<int>(result.points.size()); ++i) {
            if (!result.points[i].solved)
                continue;
            if (prev >= 0) {
                const double d = sweep_output_value(result.points[i].eq, out) -
                                 sweep_output_value(result.points[prev].eq, out);
                const bool up = d > kDirectionTolerance;
                const bool down = d < -kDirectionTolerance;
                if (!have_turning && ((up && any_down) || (down && any_up))) {
                    turning = result.points[prev].value;
                    have_turning = true;
                }
                any_up = any_up || up;
                any_down = any_down || down;
            }
            prev = i;
        }
        DirectionSummary& s = table[out];
        if (any_up && any_down) {
            s.direction = Direction::non_monotone;
            s.turning_value = turning;
        } else if (any_up) {
            s.direction = Direction::increasing;
        } else if (any_down) {
            s.direction = Direction::decreasing;
        } else {
            s.direction = Direction::constant;
        }
    }
    return table;
}

}  // namespace isac
