#include "isacmarket/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace isac {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double_token(std::string_view token) {
    double out{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("not a number: '" + std::string(token) + "'");
    return out;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    for (std::size_t c = 0; c < kSweepCsvColumns.size(); ++c)
        out << kSweepCsvColumns[c] << (c + 1 < kSweepCsvColumns.size() ? "," : "\n");

    const std::string_view param = to_string(result.spec.parameter);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (const SweepPoint& pt : result.points) {
        const bool ok = pt.solved;
        const Equilibrium& eq = pt.eq;
        const bool valid = ok && !eq.degenerate() && eq.sensing_demand_valid;
        out << param << ',' << format_double(pt.value);
        const std::array<double, 11> values = {
            ok ? eq.P_r_star : nan, ok ? eq.P_c_star : nan, ok ? eq.W_c_star : nan,
            ok ? eq.R_c_star : nan, ok ? eq.p1 : nan,       ok ? eq.p2 : nan,
            ok ? eq.theta : nan,    ok ? eq.eta : nan,      ok ? eq.profit_r : nan,
            ok ? eq.profit_c : nan, ok ? eq.profit : nan};
        for (double v : values)
            out << ',' << format_double(v);
        out << ',' << (valid ? '1' : '0') << '\n';
    }
}

void write_pair_csv(std::string_view x_name, std::string_view y_name,
                    const std::vector<double>& xs, const std::vector<double>& ys,
                    std::ostream& out) {
    out << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
}

int CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::numeric_column(int index) const {
    if (index < 0 || index >= static_cast<int>(header.size()))
        throw std::out_of_range("CsvTable: column index out of range");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(parse_double_token(row.at(index)));
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.emplace_back(line.substr(begin));
            break;
        }
        fields.emplace_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty CSV input");
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_line(line);
        if (fields.size() != table.header.size())
            throw std::invalid_argument("CSV row has " + std::to_string(fields.size()) +
                                        " fields, header has " +
                                        std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    return table;
}

}  // namespace isac
