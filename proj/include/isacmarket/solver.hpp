// Profit maximization for the monopolist: the two separable sub-problems,
// the assembled equilibrium, and brute-force grid oracles used for
// verification.  Solvers are deterministic: identical inputs produce
// bit-identical outputs, and the parallel oracle kernel reduces with an
// order-independent tie-break so it matches the serial reference exactly.

#pragma once

#include <array>

#include "isacmarket/model.hpp"

namespace isac {

struct SolverConfig {
    double p_r_lo = 1e-3;  // search interval for P_r
    double p_r_hi = 200.0;
    double pc_lo = 1e-4;   // search rectangle for (P_c, W_c)
    double pc_hi = 500.0;
    double wc_lo = 1e-4;
    double wc_hi = 500.0;
    double rel_tol = 1e-9;       // convergence tolerance on arguments
    double foc_tol = 1e-6;       // max acceptable FOC residual at an interior optimum
    int oracle_grid = 200;       // points per axis for brute-force verification
    int oracle_refine_rounds = 2;  // re-grid passes around the oracle argmax
    int scan_points = 1000;      // coarse scan density for the P_r profit curve

    void validate() const;  // throws std::invalid_argument on bad fields
};

// Diagnostics attached to one sub-problem solution.
struct SubSolveDiag {
    bool degenerate = false;  // no profit-positive point found
    bool boundary = false;    // optimum pinned at a bracket edge
};

struct ProfitRSolution {
    double P_r_star = 0.0;
    double profit = 0.0;
    double foc_residual = 0.0;  // |dPi_r/dP_r| (Richardson finite difference)
    SubSolveDiag diag;
};

struct ProfitCSolution {
    double P_c_star = 0.0;
    double W_c_star = 0.0;
    double profit = 0.0;
    double foc_residual_Pc = 0.0;  // analytic |dPi_c/dP_c|
    double foc_residual_Wc = 0.0;  // analytic |dPi_c/dW_c|
    SubSolveDiag diag;
};

// Full endogenous outcome bundle.
struct Equilibrium {
    double P_r_star = 0.0;
    double P_c_star = 0.0;
    double W_c_star = 0.0;
    double R_c_star = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double theta = 0.0;
    double eta = 0.0;
    double profit_r = 0.0;
    double profit_c = 0.0;
    double profit = 0.0;
    bool sensing_demand_valid = false;
    std::array<double, 3> foc_residuals{};  // dPi_r/dP_r, dPi_c/dP_c, dPi_c/dW_c
    SubSolveDiag sensing;
    SubSolveDiag comm;

    bool degenerate() const { return sensing.degenerate || comm.degenerate; }
};

// Maximizes p1(P_r) P_r - w_p P_r over the bracket.  The profit curve can
// be multimodal, so a coarse log-spaced scan brackets every local maximum
// before golden-section refinement; the best refined candidate wins, ties
// broken by the smaller P_r.
ProfitRSolution maximize_profit_r(const ModelParams& params, const SolverConfig& cfg);

// Maximizes beta rho/(1+rho) - w_p P_c - w_w W_c over the rectangle with a
// multi-start downhill simplex in log coordinates (9 seeds on a 3x3 log
// grid).  Ties between starts are broken by higher profit, then by
// lexicographically smaller (P_c, W_c).
ProfitCSolution maximize_profit_c(const ModelParams& params, const SolverConfig& cfg);

// A-posteriori user-side check: true iff the user's surplus at the interior
// point weakly exceeds the surplus of buying zero sensing power,
//   alpha theta(P_r) - p1(P_r) P_r >= alpha theta(0).
bool check_sensing_demand_validity(double P_r_star, const ModelParams& params);

// Composes the two sub-problem solutions into a full Equilibrium.
Equilibrium solve_equilibrium(const ModelParams& params, const SolverConfig& cfg);

struct OracleResult {
    Allocation argmax;
    double max_profit = 0.0;
    // final grid cell sizes, one per axis
    double cell_P_r = 0.0;
    double cell_P_c = 0.0;
    double cell_W_c = 0.0;
};

// Exhaustive profit evaluation over the configured brackets on a linear
// grid, re-gridded oracle_refine_rounds times around the running argmax.
// Used in tests and --verify mode only.
OracleResult brute_force_oracle(const ModelParams& params, const SolverConfig& cfg);

// Serial reference implementation of the same scan, kept for testing the
// parallel kernel against.
OracleResult brute_force_oracle_serial(const ModelParams& params, const SolverConfig& cfg);

struct Oracle1DResult {
    double argmax = 0.0;
    double max_profit = 0.0;
    double cell = 0.0;
};

struct Oracle2DResult {
    double argmax_P_c = 0.0;
    double argmax_W_c = 0.0;
    double max_profit = 0.0;
    double cell_P_c = 0.0;
    double cell_W_c = 0.0;
};

// Sub-problem grid oracles sharing the joint oracle's axes and refinement
// policy, for separability checks.
Oracle1DResult grid_oracle_profit_r(const ModelParams& params, const SolverConfig& cfg);
Oracle2DResult grid_oracle_profit_c(const ModelParams& params, const SolverConfig& cfg);

}  // namespace isac
