#include "xidx/csv.hpp"

#include <sstream>

namespace xidx::csv {

std::vector<std::vector<std::string>> parse(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;
  bool row_started = false;

  auto end_cell = [&] {
    row.push_back(cell);
    cell.clear();
    cell_started = false;
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(row);
    row.clear();
    row_started = false;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell += '"';
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        cell_started = true;
        row_started = true;
        break;
      case ',':
        end_cell();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || cell_started || !cell.empty() || !row.empty()) end_row();
        break;
      default:
        cell += c;
        cell_started = true;
        row_started = true;
        break;
    }
  }
  if (row_started || !cell.empty() || !row.empty()) end_row();
  return rows;
}

std::vector<std::vector<std::string>> parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

std::string escape_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += escape_cell(cells[i]);
  }
  out += '\n';
  return out;
}

}  // namespace xidx::csv
