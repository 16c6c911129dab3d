#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gapdex {

// Reads one numeric column from a delimited text file. The delimiter
// (comma or whitespace) is detected from the first line, and a header is
// assumed when the first line has any non-numeric cell. `column` selects
// by header name or by 0-based index; omitted, the file must have exactly
// one column. Parse failures name the offending line.
std::vector<double> load_series(const std::string& path,
                                const std::optional<std::string>& column = std::nullopt);

// Reads every column as numeric rows; all rows must have equal width.
// When the file has a header, names are returned through `header_out`.
std::vector<std::vector<double>> load_matrix(const std::string& path,
                                             std::vector<std::string>* header_out = nullptr);

// "start:stop:step" inclusive of both endpoints to within step/2.
std::vector<double> parse_grid(const std::string& text);

}  // namespace gapdex
