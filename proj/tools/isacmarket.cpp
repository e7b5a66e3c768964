// Command-line front-end: solve a single equilibrium, run comparative
// statics sweeps, tabulate the demand curves, and plot CSV columns as SVG.
//
// Exit codes: 0 success, 2 configuration error, 3 degenerate equilibrium,
// 4 validity-check failure, 5 I/O error.

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isacmarket/config.hpp"
#include "isacmarket/csv.hpp"
#include "isacmarket/model.hpp"
#include "isacmarket/solver.hpp"
#include "isacmarket/statics.hpp"
#include "isacmarket/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInvalid = 4;
constexpr int kExitIo = 5;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    bool verify = false;
    int steps_override = 0;
};

isac::ScenarioConfig load_config(const CommonOptions& opts) {
    if (opts.config_path.empty())
        return isac::ScenarioConfig{};  // documented defaults
    return isac::load_scenario_config(opts.config_path);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open output file: " + path);
    out << contents;
    if (!out)
        throw std::ios_base::failure("write failed: " + path);
}

std::string equilibrium_report(const isac::Equilibrium& eq) {
    using isac::format_double;
    std::ostringstream os;
    os << "P_r_star = " << format_double(eq.P_r_star) << '\n'
       << "P_c_star = " << format_double(eq.P_c_star) << '\n'
       << "W_c_star = " << format_double(eq.W_c_star) << '\n'
       << "R_c_star = " << format_double(eq.R_c_star) << '\n'
       << "p1 = " << format_double(eq.p1) << '\n'
       << "p2 = " << format_double(eq.p2) << '\n'
       << "theta = " << format_double(eq.theta) << '\n'
       << "eta = " << format_double(eq.eta) << '\n'
       << "profit_r = " << format_double(eq.profit_r) << '\n'
       << "profit_c = " << format_double(eq.profit_c) << '\n'
       << "profit = " << format_double(eq.profit) << '\n'
       << "sensing_demand_valid = " << (eq.sensing_demand_valid ? "true" : "false") << '\n'
       << "foc_residual_P_r = " << format_double(eq.foc_residuals[0]) << '\n'
       << "foc_residual_P_c = " << format_double(eq.foc_residuals[1]) << '\n'
       << "foc_residual_W_c = " << format_double(eq.foc_residuals[2]) << '\n'
       << "sensing_degenerate = " << (eq.sensing.degenerate ? "true" : "false") << '\n'
       << "sensing_boundary = " << (eq.sensing.boundary ? "true" : "false") << '\n'
       << "comm_degenerate = " << (eq.comm.degenerate ? "true" : "false") << '\n'
       << "comm_boundary = " << (eq.comm.boundary ? "true" : "false") << '\n';
    return os.str();
}

int cmd_solve(const CommonOptions& opts) {
    const isac::ScenarioConfig cfg = load_config(opts);
    const isac::Equilibrium eq = isac::solve_equilibrium(cfg.params, cfg.solver);

    std::string report = equilibrium_report(eq);
    if (opts.verify) {
        const isac::OracleResult oracle = isac::brute_force_oracle(cfg.params, cfg.solver);
        const double diff = std::abs(oracle.max_profit - eq.profit);
        report += "oracle_profit = " + isac::format_double(oracle.max_profit) + '\n';
        report += "oracle_P_r = " + isac::format_double(oracle.argmax.P_r) + '\n';
        report += "oracle_P_c = " + isac::format_double(oracle.argmax.P_c) + '\n';
        report += "oracle_W_c = " + isac::format_double(oracle.argmax.W_c) + '\n';
        report += "oracle_profit_discrepancy = " + isac::format_double(diff) + '\n';
    }
    std::cout << report;
    if (!opts.out_path.empty())
        write_file(opts.out_path, report);

    if (eq.degenerate()) {
        std::cerr << "degenerate equilibrium: "
                  << (eq.sensing.degenerate ? "no profitable sensing supply; " : "")
                  << (eq.comm.degenerate ? "no profitable communication supply; " : "") << '\n';
        return kExitDegenerate;
    }
    if (!eq.sensing_demand_valid) {
        std::cerr << "validity check failed: the user's surplus at the interior sensing"
                     " solution falls below the zero-purchase surplus\n";
        return kExitInvalid;
    }
    return kExitOk;
}

void print_direction_table(const isac::SweepResult& result) {
    std::cout << "direction table (" << isac::to_string(result.spec.parameter) << " in ["
              << isac::format_double(result.spec.start) << ", "
              << isac::format_double(result.spec.stop) << "], " << result.spec.steps
              << " points):\n";
    for (std::size_t i = 0; i < isac::kSweepOutputs.size(); ++i) {
        const auto& s = result.monotonicity[i];
        std::cout << "  " << isac::kSweepOutputs[i] << ": " << isac::to_string(s.direction);
        if (s.direction == isac::Direction::non_monotone)
            std::cout << " (turns near " << isac::format_double(s.turning_value) << ")";
        std::cout << '\n';
    }
    if (result.gap_count > 0)
        std::cout << "  gaps: " << result.gap_count << '\n';
    if (!result.validity_violations.empty()) {
        std::cout << "  sensing-demand validity violations at:";
        for (double v : result.validity_violations)
            std::cout << ' ' << isac::format_double(v);
        std::cout << '\n';
    }
}

int cmd_sweep(const CommonOptions& opts) {
    isac::ScenarioConfig cfg = load_config(opts);
    if (!cfg.sweep)
        throw isac::ConfigError("sweep requires sweep_parameter/sweep_start/sweep_stop/"
                                "sweep_steps in the configuration");
    if (opts.steps_override > 0) {
        cfg.sweep->steps = opts.steps_override;
        cfg.sweep->validate();
    }

    const isac::SweepResult result = isac::run_sweep(*cfg.sweep, cfg.solver);

    std::ostringstream csv;
    isac::write_sweep_csv(result, csv);
    const std::string out_path = opts.out_path.empty() ? "sweep.csv" : opts.out_path;
    write_file(out_path, csv.str());
    std::cout << "wrote " << out_path << " (" << result.points.size() << " rows)\n";
    print_direction_table(result);
    return kExitOk;
}

int cmd_demand(const CommonOptions& opts) {
    const isac::ScenarioConfig cfg = load_config(opts);

    std::vector<double> prs(cfg.demand_p_r_steps), p1s(cfg.demand_p_r_steps);
    const double pr_step =
        (cfg.demand_p_r_max - cfg.demand_p_r_min) / (cfg.demand_p_r_steps - 1);
    for (int i = 0; i < cfg.demand_p_r_steps; ++i) {
        prs[i] = cfg.demand_p_r_min + pr_step * i;
        p1s[i] = isac::inverse_demand_p1(prs[i], cfg.params);
    }
    std::vector<double> rcs(cfg.demand_r_c_steps), p2s(cfg.demand_r_c_steps);
    const double rc_step =
        (cfg.demand_r_c_max - cfg.demand_r_c_min) / (cfg.demand_r_c_steps - 1);
    for (int i = 0; i < cfg.demand_r_c_steps; ++i) {
        rcs[i] = cfg.demand_r_c_min + rc_step * i;
        p2s[i] = isac::inverse_demand_p2(rcs[i], cfg.params);
    }

    const std::string base = opts.out_path.empty() ? "demand.csv" : opts.out_path;
    const std::filesystem::path base_path(base);
    std::filesystem::path stem = base_path;
    stem.replace_extension();
    const std::string p1_path = stem.string() + "_p1.csv";
    const std::string p2_path = stem.string() + "_p2.csv";

    std::ostringstream c1, c2;
    isac::write_pair_csv("P_r", "p1", prs, p1s, c1);
    isac::write_pair_csv("R_c", "p2", rcs, p2s, c2);
    write_file(p1_path, c1.str());
    write_file(p2_path, c2.str());
    std::cout << "wrote " << p1_path << " and " << p2_path << '\n';
    return kExitOk;
}

int cmd_plot(const std::string& csv_path, const std::vector<std::string>& columns,
             const std::string& out_prefix) {
    std::ifstream in(csv_path);
    if (!in)
        throw std::ios_base::failure("cannot open CSV file: " + csv_path);
    const isac::CsvTable table = isac::read_csv(in);

    const bool is_sweep = !table.header.empty() && table.header.front() == "param";
    std::vector<std::string> plottable(table.header.begin() + (is_sweep ? 1 : 0),
                                       table.header.end());

    std::string x_name;
    std::vector<std::string> y_names = columns;
    if (is_sweep) {
        x_name = "value";
        if (y_names.empty())
            throw isac::ConfigError("plot: at least one --column is required for sweep CSVs");
    } else {
        // two-column demand table: x is the first column
        x_name = table.header.at(0);
        if (y_names.empty())
            y_names.push_back(table.header.at(1));
    }

    for (const std::string& col : y_names) {
        bool known = false;
        for (const auto& name : plottable)
            known = known || name == col;
        if (!known) {
            std::string list;
            for (std::size_t i = 0; i < plottable.size(); ++i)
                list += (i ? ", " : "") + plottable[i];
            throw isac::ConfigError("plot: unknown column '" + col + "'; valid columns: " + list);
        }
    }

    const std::vector<double> xs = table.numeric_column(table.column_index(x_name));
    std::filesystem::path prefix(out_prefix.empty() ? csv_path : out_prefix);
    prefix.replace_extension();

    for (const std::string& col : y_names) {
        const std::vector<double> ys = table.numeric_column(table.column_index(col));
        isac::LineChartSpec spec;
        const std::string param_label =
            is_sweep && !table.rows.empty() ? table.rows.front().at(0) : x_name;
        spec.x_label = is_sweep ? param_label : x_name;
        spec.y_label = col;
        spec.title = col + " vs " + spec.x_label;
        const std::string svg = isac::render_line_chart(xs, ys, spec);
        const std::string path = prefix.string() + "_" + col + ".svg";
        write_file(path, svg);
        std::cout << "wrote " << path << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"market equilibria for a monopoly ISAC service"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string plot_csv;
    std::vector<std::string> plot_columns;

    auto add_common = [&](CLI::App* sub, bool with_verify, bool with_steps) {
        sub->add_option("--config", opts.config_path, "scenario configuration file");
        sub->add_option("--out", opts.out_path, "output path");
        sub->add_option("--format", opts.format, "output format (csv)")
            ->check(CLI::IsMember({"csv"}));
        if (with_verify)
            sub->add_flag("--verify", opts.verify, "cross-check against the brute-force oracle");
        if (with_steps)
            sub->add_option("--steps", opts.steps_override, "override sweep step count")
                ->check(CLI::PositiveNumber);
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one equilibrium");
    add_common(solve, true, false);
    CLI::App* sweep = app.add_subcommand("sweep", "run a comparative-statics sweep");
    add_common(sweep, false, true);
    CLI::App* demand = app.add_subcommand("demand", "tabulate the inverse demand curves");
    add_common(demand, false, false);
    CLI::App* plot = app.add_subcommand("plot", "render CSV columns as SVG line charts");
    plot->add_option("csv", plot_csv, "input CSV produced by sweep or demand")->required();
    plot->add_option("--column", plot_columns, "output column(s) to plot");
    plot->add_option("--out", opts.out_path, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (solve->parsed())
            return cmd_solve(opts);
        if (sweep->parsed())
            return cmd_sweep(opts);
        if (demand->parsed())
            return cmd_demand(opts);
        if (plot->parsed())
            return cmd_plot(plot_csv, plot_columns, opts.out_path);
    } catch (const isac::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
