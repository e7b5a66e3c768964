#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "isacmarket/model.hpp"
#include "isacmarket/solver.hpp"

using namespace isac;

namespace {

const ModelParams kDefaults{};
const SolverConfig kCfg{};

// Fine 1-D reference argmax, independent of the production search.
struct FineGridMax {
    double argmax;
    double cell;
};

FineGridMax fine_grid_profit_r(const ModelParams& p, int n = 100000) {
    const double llo = std::log(kCfg.p_r_lo), lhi = std::log(kCfg.p_r_hi);
    double best_x = kCfg.p_r_lo, best_f = -1e300, prev = kCfg.p_r_lo, cell = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = std::exp(llo + (lhi - llo) * i / (n - 1));
        const double f = profit_r(x, p);
        if (f > best_f) {
            best_f = f;
            best_x = x;
            cell = x - prev;
        }
        prev = x;
    }
    return {best_x, std::max(cell, 1e-12)};
}

ModelParams random_draw(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.5, 1.5);
    ModelParams p;
    p.gamma = 5.0 * u(rng);
    p.gamma_T = u(rng);
    p.gamma_C = u(rng);
    p.alpha = u(rng);
    p.beta = u(rng);
    p.w_p = 0.01 * u(rng);
    p.w_w = 0.01 * u(rng);
    return p;
}

}  // namespace

TEST_CASE("SolverConfig validation") {
    SolverConfig bad = kCfg;
    bad.p_r_lo = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kCfg;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kCfg;
    bad.oracle_grid = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(kCfg.validate());
}

TEST_CASE("maximize_profit_r finds the fine-grid argmax at defaults") {
    const ProfitRSolution sol = maximize_profit_r(kDefaults, kCfg);
    const FineGridMax ref = fine_grid_profit_r(kDefaults);
    CHECK(std::fabs(sol.P_r_star - ref.argmax) <= 2.0 * ref.cell);
    CHECK(sol.profit >= profit_r(ref.argmax, kDefaults) - 1e-12);
    CHECK(sol.foc_residual <= kCfg.foc_tol);
    CHECK_FALSE(sol.diag.degenerate);
    CHECK_FALSE(sol.diag.boundary);
}

TEST_CASE("maximize_profit_r handles the multimodal low-alpha regime") {
    ModelParams p = kDefaults;
    p.alpha = 0.1;
    const ProfitRSolution sol = maximize_profit_r(p, kCfg);
    const FineGridMax ref = fine_grid_profit_r(p);
    CHECK(std::fabs(sol.P_r_star - ref.argmax) <= 2.0 * ref.cell);
    CHECK(sol.profit > 0.0);
}

TEST_CASE("maximize_profit_r flags the degenerate cost regime") {
    ModelParams p = kDefaults;
    p.w_p = 10.0;  // far above the choke price
    const ProfitRSolution sol = maximize_profit_r(p, kCfg);
    CHECK(sol.diag.degenerate);
    CHECK(sol.profit <= 0.0);
}

TEST_CASE("scaling alpha and w_p by 2 leaves the argmax bit-identical") {
    ModelParams scaled = kDefaults;
    scaled.alpha *= 2.0;
    scaled.w_p *= 2.0;
    const ProfitRSolution base = maximize_profit_r(kDefaults, kCfg);
    const ProfitRSolution twice = maximize_profit_r(scaled, kCfg);
    CHECK(twice.P_r_star == base.P_r_star);
    CHECK(twice.profit == 2.0 * base.profit);
}

TEST_CASE("maximize_profit_c agrees with the 2-D grid oracle at defaults") {
    const ProfitCSolution sol = maximize_profit_c(kDefaults, kCfg);
    const Oracle2DResult ref = grid_oracle_profit_c(kDefaults, kCfg);
    CHECK(std::fabs(sol.P_c_star - ref.argmax_P_c) <= 2.0 * ref.cell_P_c);
    CHECK(std::fabs(sol.W_c_star - ref.argmax_W_c) <= 2.0 * ref.cell_W_c);
    CHECK(sol.profit >= ref.max_profit - 1e-9);
    CHECK(sol.foc_residual_Pc <= kCfg.foc_tol);
    CHECK(sol.foc_residual_Wc <= kCfg.foc_tol);
    CHECK_FALSE(sol.diag.degenerate);
    CHECK_FALSE(sol.diag.boundary);
}

TEST_CASE("maximize_profit_c flags unaffordable bandwidth as boundary/degenerate") {
    ModelParams p = kDefaults;
    p.w_w = 1000.0;
    const ProfitCSolution sol = maximize_profit_c(p, kCfg);
    CHECK(sol.diag.boundary);
    CHECK(sol.diag.degenerate);
    CHECK(sol.W_c_star <= kCfg.wc_lo * (1.0 + 1e-6));
}

TEST_CASE("check_sensing_demand_validity cases") {
    // the price underflows to exactly zero far out, so sensing is free and
    // the rising theta beats the zero anchor
    CHECK(inverse_demand_p1(1000.0, kDefaults) == 0.0);
    CHECK(check_sensing_demand_validity(1000.0, kDefaults));
    // on the convex stretch of theta the chord lies above the tangent value
    CHECK_FALSE(check_sensing_demand_validity(0.5, kDefaults));
    CHECK_THROWS_AS(check_sensing_demand_validity(0.0, kDefaults), std::domain_error);
}

TEST_CASE("solve_equilibrium populates a consistent record at defaults") {
    const Equilibrium eq = solve_equilibrium(kDefaults, kCfg);
    CHECK(eq.R_c_star == comm_rate(eq.P_c_star, eq.W_c_star, kDefaults));
    CHECK(eq.p1 == inverse_demand_p1(eq.P_r_star, kDefaults));
    CHECK(eq.p2 == inverse_demand_p2(eq.R_c_star, kDefaults));
    CHECK(eq.theta == detection_probability(eq.P_r_star, kDefaults));
    CHECK(eq.eta == comm_utility(eq.R_c_star));
    CHECK(eq.profit == eq.profit_r + eq.profit_c);
    CHECK(eq.foc_residuals[0] <= kCfg.foc_tol);
    CHECK(eq.foc_residuals[1] <= kCfg.foc_tol);
    CHECK(eq.foc_residuals[2] <= kCfg.foc_tol);
    CHECK_FALSE(eq.degenerate());
    // the paper-default equilibrium sits below the user's zero-purchase
    // surplus, so the a-posteriori check reports it as invalid
    CHECK_FALSE(eq.sensing_demand_valid);
}

TEST_CASE("solve_equilibrium matches the brute-force oracle at defaults") {
    const Equilibrium eq = solve_equilibrium(kDefaults, kCfg);
    const OracleResult oracle = brute_force_oracle(kDefaults, kCfg);
    CHECK(std::fabs(eq.profit - oracle.max_profit) <=
          1e-4 * std::max(1.0, std::fabs(eq.profit)));
    CHECK(std::fabs(eq.P_r_star - oracle.argmax.P_r) <= 2.0 * oracle.cell_P_r);
    CHECK(std::fabs(eq.P_c_star - oracle.argmax.P_c) <= 2.0 * oracle.cell_P_c);
    CHECK(std::fabs(eq.W_c_star - oracle.argmax.W_c) <= 2.0 * oracle.cell_W_c);
}

TEST_CASE("doubling both input prices never increases profit") {
    std::mt19937 rng(555);
    for (int i = 0; i < 4; ++i) {
        ModelParams p = i == 0 ? kDefaults : random_draw(rng);
        ModelParams doubled = p;
        doubled.w_p *= 2.0;
        doubled.w_w *= 2.0;
        const double before = solve_equilibrium(p, kCfg).profit;
        const double after = solve_equilibrium(doubled, kCfg).profit;
        CHECK(after < before);
    }
}

TEST_CASE("joint oracle decomposes into the sub-problem oracles") {
    const OracleResult joint = brute_force_oracle(kDefaults, kCfg);
    const Oracle1DResult sub_r = grid_oracle_profit_r(kDefaults, kCfg);
    const Oracle2DResult sub_c = grid_oracle_profit_c(kDefaults, kCfg);
    CHECK(std::fabs(joint.argmax.P_r - sub_r.argmax) <= joint.cell_P_r + sub_r.cell);
    CHECK(std::fabs(joint.argmax.P_c - sub_c.argmax_P_c) <= joint.cell_P_c + sub_c.cell_P_c);
    CHECK(std::fabs(joint.argmax.W_c - sub_c.argmax_W_c) <= joint.cell_W_c + sub_c.cell_W_c);
    CHECK(std::fabs(joint.max_profit - (sub_r.max_profit + sub_c.max_profit)) <= 1e-9);
}

TEST_CASE("oracle reports a best-of-grid outcome when profit is negative everywhere") {
    ModelParams p = kDefaults;
    p.w_p = 10.0;
    p.w_w = 10.0;
    const OracleResult oracle = brute_force_oracle(p, kCfg);
    CHECK(oracle.max_profit < 0.0);
    CHECK(std::isfinite(oracle.max_profit));
}

TEST_CASE("oracle: solver profit dominates the grid within foc_tol") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 5; ++i) {
        const ModelParams p = random_draw(rng);
        const Equilibrium eq = solve_equilibrium(p, kCfg);
        const OracleResult oracle = brute_force_oracle(p, kCfg);
        CHECK(oracle.max_profit <= eq.profit + kCfg.foc_tol);
    }
}

TEST_CASE("oracle determinism and serial/parallel equivalence") {
    const OracleResult a = brute_force_oracle(kDefaults, kCfg);
    const OracleResult b = brute_force_oracle(kDefaults, kCfg);
    const OracleResult s = brute_force_oracle_serial(kDefaults, kCfg);
    CHECK(a.max_profit == b.max_profit);
    CHECK(a.argmax.P_r == b.argmax.P_r);
    CHECK(a.max_profit == s.max_profit);
    CHECK(a.argmax.P_r == s.argmax.P_r);
    CHECK(a.argmax.P_c == s.argmax.P_c);
    CHECK(a.argmax.W_c == s.argmax.W_c);
}

TEST_CASE("refining the oracle grid 2x never decreases the max (nested grids)") {
    SolverConfig coarse = kCfg;
    coarse.oracle_refine_rounds = 0;
    coarse.oracle_grid = 101;
    SolverConfig fine = coarse;
    fine.oracle_grid = 201;  // contains every coarse point
    for (const ModelParams& p : {kDefaults}) {
        const OracleResult lo = brute_force_oracle_serial(p, coarse);
        const OracleResult hi = brute_force_oracle_serial(p, fine);
        CHECK(hi.max_profit >= lo.max_profit);
    }
}

TEST_CASE("solver outputs are bit-identical across repeated runs") {
    const Equilibrium a = solve_equilibrium(kDefaults, kCfg);
    const Equilibrium b = solve_equilibrium(kDefaults, kCfg);
    CHECK(a.P_r_star == b.P_r_star);
    CHECK(a.P_c_star == b.P_c_star);
    CHECK(a.W_c_star == b.W_c_star);
    CHECK(a.profit == b.profit);
    CHECK(a.p1 == b.p1);
    CHECK(a.p2 == b.p2);
}

TEST_CASE("alpha leaves the communication block bit-identical") {
    ModelParams lo = kDefaults, hi = kDefaults;
    lo.alpha = 0.7;
    hi.alpha = 1.9;
    const Equilibrium a = solve_equilibrium(lo, kCfg);
    const Equilibrium b = solve_equilibrium(hi, kCfg);
    CHECK(a.P_c_star == b.P_c_star);
    CHECK(a.W_c_star == b.W_c_star);
    CHECK(a.R_c_star == b.R_c_star);
    CHECK(a.p2 == b.p2);
    CHECK(a.eta == b.eta);
    CHECK(a.profit_c == b.profit_c);
}

TEST_CASE("w_w leaves the sensing block bit-identical") {
    ModelParams lo = kDefaults, hi = kDefaults;
    lo.w_w = 0.004;
    hi.w_w = 0.05;
    const Equilibrium a = solve_equilibrium(lo, kCfg);
    const Equilibrium b = solve_equilibrium(hi, kCfg);
    CHECK(a.P_r_star == b.P_r_star);
    CHECK(a.p1 == b.p1);
    CHECK(a.theta == b.theta);
    CHECK(a.profit_r == b.profit_r);
}
