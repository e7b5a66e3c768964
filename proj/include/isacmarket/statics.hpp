// Comparative-statics engine: sweep one parameter across a range, solve
// the equilibrium at every grid point, and classify each output's
// direction.  Grid points are independent, so the sweep has an OpenMP
// kernel next to the serial reference; both produce bit-identical results.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "isacmarket/solver.hpp"

namespace isac {

enum class SweepParameter { w_p, w_w, alpha };

std::string_view to_string(SweepParameter p);
// Throws std::invalid_argument for anything but "w_p", "w_w", "alpha".
SweepParameter sweep_parameter_from_string(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::w_p;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;  // linear spacing, inclusive endpoints
    ModelParams base;

    void validate() const;  // start < stop, steps >= 2, base valid
};

enum class Direction { increasing, decreasing, constant, non_monotone };

std::string_view to_string(Direction d);

struct DirectionSummary {
    Direction direction = Direction::constant;
    double turning_value = 0.0;  // parameter value at the first reversal (non_monotone only)
};

struct SweepPoint {
    double value = 0.0;  // the swept parameter's value at this grid point
    Equilibrium eq;
    bool solved = false;      // false = gap; eq contents are meaningless
    std::string error;        // diagnostic for gaps
};

// Outputs tracked by the direction table, in fixed order.
inline constexpr std::array<std::string_view, 9> kSweepOutputs = {
    "P_r", "P_c", "W_c", "R_c", "p1", "p2", "theta", "eta", "profit"};

double sweep_output_value(const Equilibrium& eq, int output_index);

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;  // sorted ascending by value, length = steps
    std::array<DirectionSummary, kSweepOutputs.size()> monotonicity{};
    std::vector<double> validity_violations;  // parameter values with sensing_demand_valid = false
    int gap_count = 0;
};

// Differences below this magnitude count as constant when classifying
// directions; separability makes the invariant columns exactly constant,
// so this only absorbs floating-point noise.
inline constexpr double kDirectionTolerance = 1e-9;

SweepResult run_sweep(const SweepSpec& spec, const SolverConfig& cfg);
SweepResult run_sweep_serial(const SweepSpec& spec, const SolverConfig& cfg);

// Direction labels from consecutive differences of the solved points.
// Gaps are skipped; callers can see their count in SweepResult.
std::array<DirectionSummary, kSweepOutputs.size()> summarize_monotonicity(
    const SweepResult& result);

}  // namespace isac
