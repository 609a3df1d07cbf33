#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmra/error.hpp"

namespace wmra {

// One cell of an array: a star (the node in that column maps the file in that
// row) or a shuffle slot index in [1, S].
class Entry {
 public:
  constexpr Entry() = default;
  static constexpr Entry star() { return Entry{0}; }
  static Entry slot(int s) {
    if (s < 1) fail(Errc::malformed_entry, "slot index must be positive");
    return Entry{s};
  }
  constexpr bool is_star() const { return value_ == 0; }
  constexpr bool is_slot() const { return value_ > 0; }
  // 0 when the entry is a star.
  constexpr int slot_index() const { return value_; }
  friend constexpr bool operator==(Entry, Entry) = default;

 private:
  constexpr explicit Entry(int v) : value_(v) {}
  int value_ = 0;
};

// N x K grid of stars and slot integers together with its declared
// parameters. Columns are computing nodes, rows are input files, `load` is
// the number of stars per row, `slot_count` the number of shuffle slots.
// A well-formed grid satisfying conditions A1-A3 plus the counting identity
// S * g = N * (K - r) is a (K, N, r, S) wireless MapReduce array.
struct WmrArray {
  int node_count = 0;  // K, columns
  int file_count = 0;  // N, rows
  int load = 0;        // r, stars per row
  int slot_count = 0;  // S
  std::vector<Entry> grid;  // row-major, file_count x node_count

  Entry at(int file, int node) const { return grid[file * node_count + node]; }
  Entry& at(int file, int node) { return grid[file * node_count + node]; }

  // g = min{2r, K}: how many times each slot integer must appear.
  int multiplicity() const {
    return node_count < 2 * load ? node_count : 2 * load;
  }

  friend bool operator==(const WmrArray&, const WmrArray&) = default;
};

enum class Cond { A1, A2, A3, Counting, EpdaColumnStars, EpdaRegularity };

const char* cond_name(Cond c);

struct Violation {
  Cond condition;
  std::string location;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
  friend bool operator==(const VerificationReport&,
                         const VerificationReport&) = default;
};

nlohmann::json report_to_json(const VerificationReport& report);

// Condition A1: every row has exactly `load` stars.
VerificationReport check_a1(const WmrArray& a);

// Condition A2: every slot in [S] appears exactly g = min{2r, K} times and at
// most once per column. Gaps in [S] and indices above S are violations.
VerificationReport check_a2(const WmrArray& a);

// Condition A3: in each subarray A^(s), no row carries more than `load`
// integer entries.
VerificationReport check_a3(const WmrArray& a);

// A1 + A2 + A3 + the counting identity S*g = N*(K-r).
VerificationReport verify(const WmrArray& a);

// Rows and columns of `a` containing `slot`, in ascending original order,
// plus the induced sub-grid.
struct Subarray {
  int slot = 0;
  std::vector<int> rows;  // 0-based original row indices
  std::vector<int> cols;  // 0-based original column indices
  std::vector<Entry> grid;  // row-major, rows.size() x cols.size()

  Entry at(int i, int j) const { return grid[i * cols.size() + j]; }
};

// Throws slot_absent when `slot` does not occur in the grid.
Subarray subarray(const WmrArray& a, int slot);

// Text format: optional header `# wmra K=<int> N=<int> r=<int> S=<int>`,
// then N lines of K whitespace-separated tokens, each `*` or a positive
// integer. K, N and r are inferred from the grid and cross-checked against
// the header; a declared S is adopted as-is so that verify() can flag it.
WmrArray parse_array(std::string_view text);

// JSON format: {"K":..,"N":..,"r":..,"S":..,"grid":[["*",2,..],..]}.
WmrArray array_from_json(const nlohmann::json& j);
nlohmann::json array_to_json(const WmrArray& a);

enum class ArrayFormat { text, json };

std::string serialize_array(const WmrArray& a, ArrayFormat format);
std::string serialize_array_text(const WmrArray& a, bool with_header = true);

// Dispatches on the leading character ('{' selects JSON).
WmrArray parse_array_auto(std::string_view text);

}  // namespace wmra
