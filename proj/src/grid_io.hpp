#pragma once

// Internal grid tokenization shared by the array and EPDA parsers. Not part
// of the public API.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmra/array.hpp"

namespace wmra::detail {

struct RawGrid {
  int rows = 0;
  int cols = 0;
  std::vector<Entry> entries;  // row-major

  Entry at(int i, int k) const { return entries[i * cols + k]; }
};

Entry parse_token(std::string_view token, int row0, int col0);

// Body lines -> rectangular grid. Lines starting with '#' and blank lines
// are skipped here; header interpretation is the caller's business.
RawGrid parse_raw_grid(std::string_view body);

RawGrid raw_grid_from_json(const nlohmann::json& grid);

nlohmann::json grid_to_json(const std::vector<Entry>& entries, int rows,
                            int cols);

std::string grid_to_text(const std::vector<Entry>& entries, int rows,
                         int cols);

// A3 with an explicit per-row integer bound, appending one violation per
// offending (slot, row). Absent slots in [1, slot_count] are reported as
// unformable subarrays.
void append_a3_violations(const std::vector<Entry>& grid, int rows, int cols,
                          int slot_count, int bound,
                          VerificationReport& report);

}  // namespace wmra::detail
