#include "grid_io.hpp"

#include <charconv>
#include <sstream>

namespace wmra::detail {

Entry parse_token(std::string_view token, int row0, int col0) {
  if (token == "*") return Entry::star();
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value < 1)
    fail(Errc::malformed_entry, "row " + std::to_string(row0 + 1) +
                                    ", column " + std::to_string(col0 + 1) +
                                    ": token '" + std::string(token) + "'");
  return Entry::slot(value);
}

namespace {

RawGrid from_rows(std::vector<std::vector<Entry>> rows) {
  if (rows.empty() || rows.front().empty())
    fail(Errc::bad_format, "array has no cells");
  RawGrid g;
  g.rows = static_cast<int>(rows.size());
  g.cols = static_cast<int>(rows.front().size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != g.cols)
      fail(Errc::ragged_rows,
           "row " + std::to_string(i + 1) + " has " +
               std::to_string(rows[i].size()) + " entries, expected " +
               std::to_string(g.cols));
  }
  g.entries.reserve(static_cast<std::size_t>(g.rows) * g.cols);
  for (auto& row : rows) g.entries.insert(g.entries.end(), row.begin(), row.end());
  return g;
}

}  // namespace

RawGrid parse_raw_grid(std::string_view body) {
  std::vector<std::vector<Entry>> rows;
  std::istringstream lines{std::string(body)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream in(line);
    std::string token;
    if (!(in >> token)) continue;
    if (token[0] == '#') continue;
    std::vector<Entry> row;
    const int row0 = static_cast<int>(rows.size());
    int col0 = 0;
    do {
      row.push_back(parse_token(token, row0, col0++));
    } while (in >> token);
    rows.push_back(std::move(row));
  }
  return from_rows(std::move(rows));
}

RawGrid raw_grid_from_json(const nlohmann::json& grid) {
  if (!grid.is_array()) fail(Errc::bad_format, "\"grid\" must be an array");
  std::vector<std::vector<Entry>> rows;
  int row0 = 0;
  for (const auto& jrow : grid) {
    if (!jrow.is_array()) fail(Errc::bad_format, "grid rows must be arrays");
    std::vector<Entry> row;
    int col0 = 0;
    for (const auto& cell : jrow) {
      if (cell.is_string()) {
        row.push_back(parse_token(cell.get<std::string>(), row0, col0));
      } else if (cell.is_number_integer()) {
        const long long v = cell.get<long long>();
        if (v < 1)
          fail(Errc::malformed_entry,
               "row " + std::to_string(row0 + 1) + ", column " +
                   std::to_string(col0 + 1) + ": value " + std::to_string(v));
        row.push_back(Entry::slot(static_cast<int>(v)));
      } else {
        fail(Errc::malformed_entry, "row " + std::to_string(row0 + 1) +
                                        ", column " + std::to_string(col0 + 1) +
                                        ": unsupported type");
      }
      ++col0;
    }
    rows.push_back(std::move(row));
    ++row0;
  }
  return from_rows(std::move(rows));
}

nlohmann::json grid_to_json(const std::vector<Entry>& entries, int rows,
                            int cols) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < cols; ++k) {
      const Entry e = entries[i * cols + k];
      if (e.is_star()) row.push_back("*");
      else row.push_back(e.slot_index());
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string grid_to_text(const std::vector<Entry>& entries, int rows,
                         int cols) {
  std::string out;
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      if (k > 0) out += ' ';
      const Entry e = entries[i * cols + k];
      if (e.is_star()) out += '*';
      else out += std::to_string(e.slot_index());
    }
    out += '\n';
  }
  return out;
}

void append_a3_violations(const std::vector<Entry>& grid, int rows, int cols,
                          int slot_count, int bound,
                          VerificationReport& report) {
  for (int s = 1; s <= slot_count; ++s) {
    std::vector<int> sub_rows, sub_cols;
    std::vector<bool> row_hit(rows, false), col_hit(cols, false);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k)
        if (grid[i * cols + k].slot_index() == s) {
          row_hit[i] = true;
          col_hit[k] = true;
        }
    for (int i = 0; i < rows; ++i)
      if (row_hit[i]) sub_rows.push_back(i);
    for (int k = 0; k < cols; ++k)
      if (col_hit[k]) sub_cols.push_back(k);
    if (sub_rows.empty()) {
      report.violations.push_back({Cond::A3, "slot " + std::to_string(s),
                                   "cannot form subarray: slot absent"});
      continue;
    }
    for (const int i : sub_rows) {
      int integers = 0;
      for (const int k : sub_cols)
        if (grid[i * cols + k].is_slot()) ++integers;
      if (integers > bound)
        report.violations.push_back(
            {Cond::A3,
             "slot " + std::to_string(s) + ", row " + std::to_string(i + 1),
             std::to_string(integers) + " integers, at most " +
                 std::to_string(bound) + " allowed"});
    }
  }
}

}  // namespace wmra::detail
