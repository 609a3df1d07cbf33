#include "wmra/sweep.hpp"

#include "wmra/constructions.hpp"
#include "wmra/shuffle.hpp"

namespace wmra {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long result = 1;
  for (int j = 1; j <= k; ++j) {
    // C(n-k+j, j) is integral at every step; the wide intermediate keeps the
    // pre-division product from overflowing
    result = static_cast<long long>(static_cast<__int128>(result) *
                                    (n - k + j) / j);
  }
  return result;
}

std::vector<SweepRow> sweep_rows(int node_count_max) {
  std::vector<SweepRow> rows;
  for (int K = 1; K <= node_count_max; ++K) {
    for (int r = 1; r <= K; ++r) {
      const bool case_b_fits = (K % r == 0) && (K / r >= 2);
      const bool case_a_fits = 2 * r >= K;
      if (!case_b_fits && !case_a_fits) continue;
      // case (b) wins where both apply: fewer files (N = K/r vs N = K)
      const WmrArray a =
          case_b_fits ? construct_case_b(K, r) : construct_case_a(K, r);
      SweepRow row;
      row.node_count = K;
      row.load = r;
      row.source = case_b_fits ? "case-b" : "case-a";
      row.file_count = a.file_count;
      row.slot_count = a.slot_count;
      row.ndt_value = ndt(a);
      row.optimal = optimal_ndt(K, r);
      row.is_optimal = row.ndt_value == row.optimal;
      row.baseline_files = binomial(K, r);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace wmra
