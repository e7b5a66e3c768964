// CSV emission and parsing.  Doubles are written in their shortest
// round-trip decimal form, so parsing a file back reproduces the in-memory
// values bit for bit and reruns produce byte-identical files.

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "isacmarket/statics.hpp"

namespace isac {

// Shortest decimal representation that round-trips through from_chars.
std::string format_double(double value);
// Strict parse of a full token; throws std::invalid_argument otherwise.
double parse_double_token(std::string_view token);

inline constexpr std::array<std::string_view, 14> kSweepCsvColumns = {
    "param", "value", "P_r",      "P_c",      "W_c",    "R_c",  "p1",
    "p2",    "theta", "eta",      "profit_r", "profit_c", "profit", "valid"};

// One row per grid point, columns exactly kSweepCsvColumns.  Unsolved
// points carry nan outputs; `valid` is 1 only for a solved, non-degenerate
// point that passed the sensing-demand check.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

// Two-column demand tables (cmd_demand).
void write_pair_csv(std::string_view x_name, std::string_view y_name,
                    const std::vector<double>& xs, const std::vector<double>& ys,
                    std::ostream& out);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(std::string_view name) const;  // -1 when absent
    std::vector<double> numeric_column(int index) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace isac
