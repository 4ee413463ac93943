#pragma once

#include "tensorlog/matkit.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace tensorlog {

/// Dense CSV: N rows of N comma-separated 0/1 values.
AdjMatrix read_csv_matrix(std::string_view text);
std::string write_csv_matrix(const AdjMatrix& r);

/// Edge list: one `i j` pair per line, 1-based. Blank lines and lines
/// starting with `#` or `%` are ignored. Without `n`, the dimension is the
/// largest index seen; an empty list then needs `n`.
AdjMatrix read_edge_list(std::string_view text, std::optional<std::size_t> n = std::nullopt);
std::string write_edge_list(const AdjMatrix& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace tensorlog
