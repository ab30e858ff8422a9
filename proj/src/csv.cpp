#include "fcpd/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "fcpd/errors.hpp"

namespace fcpd {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, int row, int col) {
    std::string cell = trim(raw);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("non-numeric cell \"" + cell + "\" (row " + std::to_string(row) +
                        ", column " + std::to_string(col) + ")");
    return value;
}

std::string format_value(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    require(ec == std::errc{}, "to_chars failed");
    return std::string(buf, ptr);
}

}  // namespace

FunctionalSeries load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open \"" + path + "\" for reading");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw DataError("\"" + path + "\" is empty");

    int first_data = 0;
    Eigen::VectorXd grid;
    if (has_header) {
        auto cells = split_line(lines[0]);
        grid.resize(static_cast<int>(cells.size()));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            std::string cell = trim(cells[j]);
            if (cell.rfind("s=", 0) != 0)
                throw DataError("header cell must look like \"s=<value>\" (row 1, column " +
                                std::to_string(j + 1) + ")");
            grid[static_cast<int>(j)] = parse_cell(cell.substr(2), 1, static_cast<int>(j + 1));
        }
        first_data = 1;
    }

    int n = static_cast<int>(lines.size()) - first_data;
    if (n < 3)
        throw DataError("\"" + path + "\" has " + std::to_string(n) +
                        " data rows; at least 3 are required");

    auto first_cells = split_line(lines[first_data]);
    int m = static_cast<int>(first_cells.size());
    if (has_header && m != grid.size())
        throw DataError("row 2 has " + std::to_string(m) + " cells but the header has " +
                        std::to_string(grid.size()));

    Eigen::MatrixXd values(n, m);
    for (int i = 0; i < n; ++i) {
        int file_row = first_data + i + 1;
        auto cells = split_line(lines[first_data + i]);
        if (static_cast<int>(cells.size()) != m)
            throw DataError("ragged row: row " + std::to_string(file_row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(m));
        for (int j = 0; j < m; ++j)
            values(i, j) = parse_cell(cells[static_cast<std::size_t>(j)], file_row, j + 1);
    }

    if (!has_header) grid = FunctionalSeries::default_grid(m);
    return FunctionalSeries(std::move(values), std::move(grid));
}

void save_csv(const FunctionalSeries& series, const std::string& path, bool write_header) {
    std::ostringstream out;
    if (write_header) {
        for (int j = 0; j < series.m(); ++j) {
            if (j) out << ',';
            out << "s=" << format_value(series.grid()[j]);
        }
        out << '\n';
    }
    for (int i = 0; i < series.n(); ++i) {
        for (int j = 0; j < series.m(); ++j) {
            if (j) out << ',';
            out << format_value(series.values()(i, j));
        }
        out << '\n';
    }

    std::ofstream file(path, std::ios::trunc);
    if (!file) throw DataError("cannot open \"" + path + "\" for writing");
    file << out.str();
    if (!file) throw DataError("failed writing \"" + path + "\"");
}

}  // namespace fcpd
