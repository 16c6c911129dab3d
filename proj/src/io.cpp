#include "gapdex/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gapdex/errors.hpp"

namespace gapdex {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line, bool comma) {
    std::vector<std::string> cells;
    if (comma) {
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            cells.push_back(trim(cell));
        }
    } else {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            cells.push_back(tok);
        }
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

struct Table {
    std::vector<std::string> header;  // empty when the file has none
    std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path);
    }
    Table t;
    std::string line;
    std::size_t line_no = 0;
    std::size_t header_line = 0;
    std::string header_sample;
    bool comma = false;
    bool first_content = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        if (first_content) {
            comma = line.find(',') != std::string::npos;
        }
        const std::vector<std::string> cells = split_cells(line, comma);
        if (cells.empty()) {
            continue;
        }
        std::vector<double> vals(cells.size());
        std::size_t bad = cells.size();
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (!parse_double(cells[k], vals[k])) {
                bad = k;
                break;
            }
        }
        if (first_content) {
            first_content = false;
            width = cells.size();
            if (bad < cells.size()) {
                // Any non-numeric cell on the first line makes it a header.
                t.header = cells;
                header_line = line_no;
                header_sample = cells[bad];
                continue;
            }
        }
        if (bad < cells.size()) {
            throw data_error("line " + std::to_string(line_no) + ": cannot parse '" + cells[bad] +
                             "' as a number");
        }
        if (cells.size() != width) {
            throw data_error("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " columns, got " +
                             std::to_string(cells.size()));
        }
        for (std::size_t k = 0; k < vals.size(); ++k) {
            if (!std::isfinite(vals[k])) {
                throw data_error("line " + std::to_string(line_no) + ": non-finite value '" +
                                 cells[k] + "'");
            }
        }
        t.rows.push_back(std::move(vals));
    }
    if (!t.header.empty() && t.rows.empty()) {
        throw data_error("line " + std::to_string(header_line) + ": cannot parse '" +
                         header_sample + "' as a number and no data rows follow");
    }
    return t;
}

std::size_t resolve_column(const Table& t, const std::optional<std::string>& column,
                           std::size_t width) {
    if (!column) {
        if (width != 1) {
            throw data_error("file has " + std::to_string(width) +
                             " columns; select one with --column");
        }
        return 0;
    }
    for (std::size_t k = 0; k < t.header.size(); ++k) {
        if (t.header[k] == *column) {
            return k;
        }
    }
    // Not a header name: accept a 0-based index.
    std::size_t idx = 0;
    bool numeric = !column->empty();
    for (char ch : *column) {
        if (ch < '0' || ch > '9') {
            numeric = false;
            break;
        }
        idx = idx * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (!numeric) {
        throw data_error("unknown column '" + *column + "'");
    }
    if (idx >= width) {
        throw data_error("column index " + std::to_string(idx) + " out of range; file has " +
                         std::to_string(width) + " columns");
    }
    return idx;
}

}  // namespace

std::vector<double> load_series(const std::string& path,
                                const std::optional<std::string>& column) {
    const Table t = read_table(path);
    if (t.rows.empty()) {
        throw std::invalid_argument(path + ": need at least 2 values, got 0");
    }
    const std::size_t idx = resolve_column(t, column, t.rows.front().size());
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.push_back(row[idx]);
    }
    if (out.size() < 2) {
        throw std::invalid_argument(path + ": need at least 2 values, got " +
                                    std::to_string(out.size()));
    }
    return out;
}

std::vector<std::vector<double>> load_matrix(const std::string& path,
                                             std::vector<std::string>* header_out) {
    Table t = read_table(path);
    if (header_out != nullptr) {
        *header_out = t.header;
    }
    return std::move(t.rows);
}

std::vector<double> parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        text.find(':', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("grid must have the form start:stop:step");
    }
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    if (!parse_double(trim(text.substr(0, c1)), start) ||
        !parse_double(trim(text.substr(c1 + 1, c2 - c1 - 1)), stop) ||
        !parse_double(trim(text.substr(c2 + 1)), step) || !std::isfinite(start) ||
        !std::isfinite(stop) || !std::isfinite(step)) {
        throw std::invalid_argument("grid bounds must be finite numbers");
    }
    if (step <= 0.0) {
        throw std::invalid_argument("grid step must be > 0");
    }
    if (stop < start - step / 2.0) {
        throw std::invalid_argument("grid stop must not precede start");
    }
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double x = start + static_cast<double>(k) * step;
        if (x > stop + step / 2.0) {
            break;
        }
        grid.push_back(x);
        if (grid.size() > 1000000) {
            throw std::invalid_argument("grid has more than 1e6 points");
        }
    }
    return grid;
}

}  // namespace gapdex
