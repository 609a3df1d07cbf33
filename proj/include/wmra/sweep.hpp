#pragma once

#include <string>
#include <vector>

#include "wmra/rational.hpp"

namespace wmra {

// One constructible (K, r) point. `baseline_files` is C(K, r), the file-count
// granularity the large-library scheme needs at the same load.
struct SweepRow {
  int node_count = 0;
  int load = 0;
  std::string source;  // "case-a" or "case-b"
  int file_count = 0;
  int slot_count = 0;
  Rational ndt_value;
  Rational optimal;
  bool is_optimal = false;
  long long baseline_files = 0;
};

// Rows for every K <= node_count_max and every r coverable by the two
// constructions; case-b is preferred where both apply (smaller N).
std::vector<SweepRow> sweep_rows(int node_count_max);

long long binomial(int n, int k);

}  // namespace wmra
