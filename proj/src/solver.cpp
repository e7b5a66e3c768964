#include "isacmarket/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

namespace {

constexpr double kGolden = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

void require_field(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(std::string("SolverConfig: ") + what);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> xs(n);
    const double llo = std::log(lo);
    const double step = (std::log(hi) - llo) / (n - 1);
    for (int i = 0; i < n; ++i)
        xs[i] = std::exp(llo + step * i);
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

// Linear axis with shared points across nested resolutions: the fraction
// i/(n-1) is formed first, so a (2n-1)-point grid contains the n-point grid
// bit for bit.
std::vector<double> lin_spaced(double lo, double hi, int n) {
    std::vector<double> xs(n);
    const double span = hi - lo;
    for (int i = 0; i < n; ++i)
        xs[i] = lo + span * (static_cast<double>(i) / (n - 1));
    xs.back() = hi;
    return xs;
}

// Golden-section search for a maximum of f on [a, b]; returns the best
// point evaluated.  Stops once the bracket shrinks below rel_tol relative
// to the midpoint magnitude.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double rel_tol) {
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 300; ++it) {
        if (b - a <= rel_tol * (std::fabs(a) + std::fabs(b)) * 0.5)
            break;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

// Richardson-extrapolated central difference.
double richardson_derivative(const std::function<double(double)>& f, double x,
                             double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// ---------------------------------------------------------------------------
// Downhill simplex in 2-D (used in log coordinates by maximize_profit_c).

struct SimplexResult {
    std::array<double, 2> x{};
    double f = 0.0;
};

SimplexResult nelder_mead_2d(const std::function<double(const std::array<double, 2>&)>& f,
                             std::array<double, 2> seed, double step, double rel_tol,
                             int max_iter) {
    struct Vertex {
        std::array<double, 2> x;
        double f;
    };
    std::array<Vertex, 3> v;
    v[0] = {seed, f(seed)};
    v[1] = {{seed[0] + step, seed[1]}, 0.0};
    v[1].f = f(v[1].x);
    v[2] = {{seed[0], seed[1] + step}, 0.0};
    v[2].f = f(v[2].x);

    auto order = [&]() {
        std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) {
            if (a.f != b.f) return a.f > b.f;  // maximizing: best first
            if (a.x[0] != b.x[0]) return a.x[0] < b.x[0];
            return a.x[1] < b.x[1];
        });
    };
    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                d = std::max(d, std::hypot(v[i].x[0] - v[j].x[0], v[i].x[1] - v[j].x[1]));
        return d;
    };

    order();
    for (int it = 0; it < max_iter; ++it) {
        const double fspread = std::fabs(v[0].f - v[2].f);
        if (diameter() <= rel_tol || fspread <= 1e-16 * std::max(1.0, std::fabs(v[0].f)))
            break;

        const std::array<double, 2> centroid = {(v[0].x[0] + v[1].x[0]) * 0.5,
                                                (v[0].x[1] + v[1].x[1]) * 0.5};
        auto point_at = [&](double t) {
            return std::array<double, 2>{centroid[0] + t * (centroid[0] - v[2].x[0]),
                                         centroid[1] + t * (centroid[1] - v[2].x[1])};
        };

        const auto xr = point_at(1.0);  // reflection
        const double fr = f(xr);
        if (fr > v[0].f) {
            const auto xe = point_at(2.0);  // expansion
            const double fe = f(xe);
            if (fe > fr)
                v[2] = {xe, fe};
            else
                v[2] = {xr, fr};
        } else if (fr > v[1].f) {
            v[2] = {xr, fr};
        } else {
            const bool outside = fr > v[2].f;
            const auto xc = point_at(outside ? 0.5 : -0.5);  // contraction
            const double fc = f(xc);
            if (fc > (outside ? fr : v[2].f)) {
                v[2] = {xc, fc};
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    v[i].x[0] = v[0].x[0] + 0.5 * (v[i].x[0] - v[0].x[0]);
                    v[i].x[1] = v[0].x[1] + 0.5 * (v[i].x[1] - v[0].x[1]);
                    v[i].f = f(v[i].x);
                }
            }
        }
        order();
    }
    return {v[0].x, v[0].f};
}

}  // namespace

void SolverConfig::validate() const {
    require_field(p_r_lo > 0.0 && p_r_lo < p_r_hi, "p_r bracket must satisfy 0 < lo < hi");
    require_field(pc_lo > 0.0 && pc_lo < pc_hi, "P_c bracket must satisfy 0 < lo < hi");
    require_field(wc_lo > 0.0 && wc_lo < wc_hi, "W_c bracket must satisfy 0 < lo < hi");
    require_field(rel_tol > 0.0, "rel_tol must be > 0");
    require_field(foc_tol > 0.0, "foc_tol must be > 0");
    require_field(oracle_grid >= 2, "oracle_grid must be >= 2");
    require_field(oracle_refine_rounds >= 0, "oracle_refine_rounds must be >= 0");
    require_field(scan_points >= 2, "scan_points must be >= 2");
}

ProfitRSolution maximize_profit_r(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();

    const auto objective = [&](double P_r) { return profit_r(P_r, params); };
    const auto xs = log_spaced(cfg.p_r_lo, cfg.p_r_hi, cfg.scan_points);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        fs[i] = objective(xs[i]);

    // Bracket every local maximum of the coarse scan, then refine each.
    ProfitRSolution best;
    best.P_r_star = xs.front();
    best.profit = fs.front();
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
        const bool right_ok = i + 1 == n || fs[i] >= fs[i + 1];
        if (!(left_ok && right_ok))
            continue;
        const double lo = xs[i == 0 ? 0 : i - 1];
        const double hi = xs[i + 1 == n ? n - 1 : i + 1];
        double x_star = lo < hi ? golden_max(objective, lo, hi, cfg.rel_tol) : lo;
        double f_star = objective(x_star);
        if (f_star > best.profit ||
            (f_star == best.profit && x_star < best.P_r_star)) {
            best.P_r_star = x_star;
            best.profit = f_star;
        }
    }

    best.diag.degenerate = !(best.profit > 0.0);
    const double span = cfg.p_r_hi - cfg.p_r_lo;
    best.diag.boundary = (best.P_r_star - cfg.p_r_lo) <= cfg.rel_tol * span ||
                         (cfg.p_r_hi - best.P_r_star) <= cfg.rel_tol * span;

    const double h = std::min(1e-5 * std::max(1.0, best.P_r_star), 0.5 * best.P_r_star);
    best.foc_residual = std::fabs(richardson_derivative(objective, best.P_r_star, h));
    return best;
}

ProfitCSolution maximize_profit_c(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();

    const double lx0 = std::log(cfg.pc_lo), lx1 = std::log(cfg.pc_hi);
    const double ly0 = std::log(cfg.wc_lo), ly1 = std::log(cfg.wc_hi);

    // Objective in log coordinates with a quadratic penalty outside the box.
    const auto objective = [&](const std::array<double, 2>& z) {
        double penalty = 0.0;
        double zx = z[0], zy = z[1];
        if (zx < lx0) { penalty += (lx0 - zx) * (lx0 - zx); zx = lx0; }
        if (zx > lx1) { penalty += (zx - lx1) * (zx - lx1); zx = lx1; }
        if (zy < ly0) { penalty += (ly0 - zy) * (ly0 - zy); zy = ly0; }
        if (zy > ly1) { penalty += (zy - ly1) * (zy - ly1); zy = ly1; }
        return profit_c(std::exp(zx), std::exp(zy), params) - 1e3 * penalty;
    };

    bool have_winner = false;
    SimplexResult winner{};
    int boundary_starts = 0;
    int total_starts = 0;
    const double edge_eps = 1e-7;  // log-units; ~1e-7 relative in raw coordinates

    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            const std::array<double, 2> seed = {lx0 + (lx1 - lx0) * i / 4.0,
                                                ly0 + (ly1 - ly0) * j / 4.0};
            SimplexResult r = nelder_mead_2d(objective, seed, 0.5, cfg.rel_tol, 2000);
            r.x[0] = std::clamp(r.x[0], lx0, lx1);
            r.x[1] = std::clamp(r.x[1], ly0, ly1);
            r.f = profit_c(std::exp(r.x[0]), std::exp(r.x[1]), params);
            ++total_starts;
            const bool at_edge = r.x[0] - lx0 <= edge_eps || lx1 - r.x[0] <= edge_eps ||
                                 r.x[1] - ly0 <= edge_eps || ly1 - r.x[1] <= edge_eps;
            if (at_edge)
                ++boundary_starts;
            const bool better =
                !have_winner || r.f > winner.f ||
                (r.f == winner.f &&
                 (r.x[0] < winner.x[0] || (r.x[0] == winner.x[0] && r.x[1] < winner.x[1])));
            if (better) {
                winner = r;
                have_winner = true;
            }
        }
    }

    ProfitCSolution out;
    out.P_c_star = std::exp(winner.x[0]);
    out.W_c_star = std::exp(winner.x[1]);
    out.profit = profit_c(out.P_c_star, out.W_c_star, params);
    out.diag.boundary = winner.x[0] - lx0 <= edge_eps || lx1 - winner.x[0] <= edge_eps ||
                        winner.x[1] - ly0 <= edge_eps || ly1 - winner.x[1] <= edge_eps;
    out.diag.degenerate = (boundary_starts == total_starts) || !(out.profit > 0.0);

    const double rho = comm_rate(out.P_c_star, out.W_c_star, params);
    const double marginal_revenue = params.beta / ((1.0 + rho) * (1.0 + rho));
    out.foc_residual_Pc = std::fabs(
        marginal_revenue * comm_rate_dPc(out.P_c_star, out.W_c_star, params) - params.w_p);
    out.foc_residual_Wc = std::fabs(
        marginal_revenue * comm_rate_dWc(out.P_c_star, out.W_c_star, params) - params.w_w);
    return out;
}

bool check_sensing_demand_validity(double P_r_star, const ModelParams& params) {
    if (!(P_r_star > 0.0))
        throw std::domain_error("check_sensing_demand_validity: P_r_star must be > 0");
    const double p1 = inverse_demand_p1(P_r_star, params);
    const double interior = params.alpha * detection_probability(P_r_star, params) -
                            p1 * P_r_star;
    const double at_zero = params.alpha * detection_probability(0.0, params);
    return interior >= at_zero;
}

Equilibrium solve_equilibrium(const ModelParams& params, const SolverConfig& cfg) {
    const ProfitRSolution r = maximize_profit_r(params, cfg);
    const ProfitCSolution c = maximize_profit_c(params, cfg);

    Equilibrium eq;
    eq.P_r_star = r.P_r_star;
    eq.P_c_star = c.P_c_star;
    eq.W_c_star = c.W_c_star;
    eq.R_c_star = comm_rate(c.P_c_star, c.W_c_star, params);
    eq.p1 = inverse_demand_p1(r.P_r_star, params);
    eq.p2 = inverse_demand_p2(eq.R_c_star, params);
    eq.theta = detection_probability(r.P_r_star, params);
    eq.eta = comm_utility(eq.R_c_star);
    eq.profit_r = r.profit;
    eq.profit_c = c.profit;
    eq.profit = r.profit + c.profit;
    eq.sensing_demand_valid = check_sensing_demand_validity(r.P_r_star, params);
    eq.foc_residuals = {r.foc_residual, c.foc_residual_Pc, c.foc_residual_Wc};
    eq.sensing = r.diag;
    eq.comm = c.diag;
    return eq;
}

// ---------------------------------------------------------------------------
// Brute-force grid oracles.
//
// Axes are linear; each refinement round re-grids a one-cell neighbourhood
// of the running argmax.  The hot scan exists twice: a serial reference and
// an OpenMP kernel whose reduction uses the total order (profit desc, flat
// index asc) so the winner cannot depend on the thread schedule.

namespace {

struct GridBest {
    double profit = -std::numeric_limits<double>::infinity();
    std::int64_t flat = std::numeric_limits<std::int64_t>::max();

    bool beats(const GridBest& other) const {
        if (profit != other.profit) return profit > other.profit;
        return flat < other.flat;
    }
};

struct Bounds {
    double lo, hi;
};

Bounds shrink_around(const std::vector<double>& axis, int idx) {
    const int n = static_cast<int>(axis.size());
    return {axis[std::max(0, idx - 1)], axis[std::min(n - 1, idx + 1)]};
}

// Per-cell profit pieces.  p1 is expensive (Marcum difference), so it is
// cached along the P_r axis; the argmax still runs over the full product
// grid of total-profit values.
struct ProfitGrid {
    std::vector<double> pr_axis, pc_axis, wc_axis;
    std::vector<double> sensing_term;  // p1(P_r) P_r - w_p P_r per P_r point
    const ModelParams* params;

    void build(const ModelParams& p, const Bounds& br, const Bounds& bc,
               const Bounds& bw, int n) {
        params = &p;
        pr_axis = lin_spaced(br.lo, br.hi, n);
        pc_axis = lin_spaced(bc.lo, bc.hi, n);
        wc_axis = lin_spaced(bw.lo, bw.hi, n);
        sensing_term.resize(pr_axis.size());
        for (std::size_t i = 0; i < pr_axis.size(); ++i)
            sensing_term[i] =
                inverse_demand_p1(pr_axis[i], p) * pr_axis[i] - p.w_p * pr_axis[i];
    }

    double comm_term(int j, int k) const {
        const double rho = comm_rate(pc_axis[j], wc_axis[k], *params);
        return inverse_demand_p2(rho, *params) * rho - params->w_p * pc_axis[j] -
               params->w_w * wc_axis[k];
    }
};

GridBest scan_grid_serial(const ProfitGrid& grid) {
    const int n = static_cast<int>(grid.pr_axis.size());
    GridBest best;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double comm = grid.comm_term(j, k);
            for (int i = 0; i < n; ++i) {
                GridBest cand{grid.sensing_term[i] + comm,
                              (static_cast<std::int64_t>(i) * n + j) * n + k};
                if (cand.beats(best))
                    best = cand;
            }
        }
    }
    return best;
}

GridBest scan_grid_parallel(const ProfitGrid& grid) {
    const int n = static_cast<int>(grid.pr_axis.size());
    GridBest best;
#pragma omp parallel
    {
        GridBest local;
#pragma omp for schedule(static) nowait
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double comm = grid.comm_term(j, k);
                for (int i = 0; i < n; ++i) {
                    GridBest cand{grid.sensing_term[i] + comm,
                                  (static_cast<std::int64_t>(i) * n + j) * n + k};
                    if (cand.beats(local))
                        local = cand;
                }
            }
        }
#pragma omp critical
        {
            if (local.beats(best))
                best = local;
        }
    }
    return best;
}

OracleResult run_oracle(const ModelParams& params, const SolverConfig& cfg,
                        GridBest (*scan)(const ProfitGrid&)) {
    params.validate();
    cfg.validate();

    Bounds br{cfg.p_r_lo, cfg.p_r_hi};
    Bounds bc{cfg.pc_lo, cfg.pc_hi};
    Bounds bw{cfg.wc_lo, cfg.wc_hi};
    const int n = cfg.oracle_grid;

    ProfitGrid grid;
    OracleResult out;
    for (int round = 0; round <= cfg.oracle_refine_rounds; ++round) {
        grid.build(params, br, bc, bw, n);
        const GridBest best = scan(grid);
        const int k = static_cast<int>(best.flat % n);
        const int j = static_cast<int>((best.flat / n) % n);
        const int i = static_cast<int>(best.flat / (static_cast<std::int64_t>(n) * n));
        out.argmax = {grid.pr_axis[i], grid.pc_axis[j], grid.wc_axis[k]};
        out.max_profit = best.profit;
        out.cell_P_r = grid.pr_axis[1] - grid.pr_axis[0];
        out.cell_P_c = grid.pc_axis[1] - grid.pc_axis[0];
        out.cell_W_c = grid.wc_axis[1] - grid.wc_axis[0];
        br = shrink_around(grid.pr_axis, i);
        bc = shrink_around(grid.pc_axis, j);
        bw = shrink_around(grid.wc_axis, k);
    }
    return out;
}

}  // namespace

OracleResult brute_force_oracle(const ModelParams& params, const SolverConfig& cfg) {
    return run_oracle(params, cfg, &scan_grid_parallel);
}

OracleResult brute_force_oracle_serial(const ModelParams& params, const SolverConfig& cfg) {
    return run_oracle(params, cfg, &scan_grid_serial);
}

Oracle1DResult grid_oracle_profit_r(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    Bounds b{cfg.p_r_lo, cfg.p_r_hi};
    Oracle1DResult out;
    for (int round = 0; round <= cfg.oracle_refine_rounds; ++round) {
        const auto axis = lin_spaced(b.lo, b.hi, cfg.oracle_grid);
        int best_i = 0;
        double best_f = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(axis.size()); ++i) {
            const double f = profit_r(axis[i], params);
            if (f > best_f) {
                best_f = f;
                best_i = i;
            }
        }
        out.argmax = axis[best_i];
        out.max_profit = best_f;
        out.cell = axis[1] - axis[0];
        b = shrink_around(axis, best_i);
    }
    return out;
}

Oracle2DResult grid_oracle_profit_c(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    Bounds bc{cfg.pc_lo, cfg.pc_hi};
    Bounds bw{cfg.wc_lo, cfg.wc_hi};
    Oracle2DResult out;
    for (int round = 0; round <= cfg.oracle_refine_rounds; ++round) {
        const auto pc = lin_spaced(bc.lo, bc.hi, cfg.oracle_grid);
        const auto wc = lin_spaced(bw.lo, bw.hi, cfg.oracle_grid);
        int best_j = 0, best_k = 0;
        double best_f = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < static_cast<int>(pc.size()); ++j) {
            for (int k = 0; k < static_cast<int>(wc.size()); ++k) {
                const double f = profit_c(pc[j], wc[k], params);
                if (f > best_f) {
                    best_f = f;
                    best_j = j;
                    best_k = k;
                }
            }
        }
        out.argmax_P_c = pc[best_j];
        out.argmax_W_c = wc[best_k];
        out.max_profit = best_f;
        out.cell_P_c = pc[1] - pc[0];
        out.cell_W_c = wc[1] - wc[0];
        bc = shrink_around(pc, best_j);
        bw = shrink_around(wc, best_k);
    }
    return out;
}

}  // namespace isac
