#pragma once

#include <istream>
#include <string>
#include <vector>

namespace xidx::csv {

// RFC 4180-style parsing: quoted cells may contain commas, doubled quotes
// and newlines. Rows are vectors of unescaped cells; a trailing newline
// does not produce an empty row.
std::vector<std::vector<std::string>> parse(std::istream& in);
std::vector<std::vector<std::string>> parse_string(const std::string& text);

// Quotes a cell only when needed (comma, quote or newline present).
std::string escape_cell(const std::string& cell);
std::string join_row(const std::vector<std::string>& cells);

}  // namespace xidx::csv
