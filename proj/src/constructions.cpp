#include "wmra/constructions.hpp"

namespace wmra {

WmrArray construct_case_a(int node_count, int load) {
  const int K = node_count;
  const int r = load;
  if (K < 1 || r < 1 || r > K)
    fail(Errc::invalid_load,
         "need 1 <= r <= K, got K=" + std::to_string(K) + " r=" +
             std::to_string(r));
  if (2 * r < K)
    fail(Errc::invalid_load, "case (a) needs 2r >= K, got K=" +
                                 std::to_string(K) + " r=" + std::to_string(r));
  WmrArray a;
  a.node_count = K;
  a.file_count = K;
  a.load = r;
  a.slot_count = K - r;
  a.grid.resize(static_cast<std::size_t>(K) * K);
  for (int i = 0; i < K; ++i) {
    for (int k = 0; k < K; ++k) {
      // d is the residue (i - k) mod K in [0, K); stars occupy d < r and the
      // remaining diagonals carry slot d - r + 1, which matches placing s in
      // column k at row (k - 1 + r + s) wrapped into [K].
      const int d = (i - k + K) % K;
      a.at(i, k) = d < r ? Entry::star() : Entry::slot(d - r + 1);
    }
  }
  return a;
}

WmrArray construct_case_b_base(int t) {
  if (t < 2) fail(Errc::invalid_t, "need t >= 2, got " + std::to_string(t));
  WmrArray b;
  b.node_count = t;
  b.file_count = t;
  b.load = 1;
  b.slot_count = t * (t - 1) / 2;
  b.grid.resize(static_cast<std::size_t>(t) * t);
  for (int i = 0; i < t; ++i) b.at(i, i) = Entry::star();
  // s = u(u-1)/2 + v sits at (v, t-u+v) and its mirror; together the pairs
  // tile all off-diagonal cells symmetrically.
  for (int u = 1; u <= t - 1; ++u) {
    for (int v = 1; v <= u; ++v) {
      const int s = u * (u - 1) / 2 + v;
      b.at(v - 1, t - u + v - 1) = Entry::slot(s);
      b.at(t - u + v - 1, v - 1) = Entry::slot(s);
    }
  }
  return b;
}

WmrArray concat_horizontal(const WmrArray& b, int copies) {
  if (copies < 1)
    fail(Errc::unsupported, "copies must be >= 1, got " + std::to_string(copies));
  WmrArray c;
  c.node_count = b.node_count * copies;
  c.file_count = b.file_count;
  c.load = b.load * copies;
  c.slot_count = b.slot_count;
  c.grid.reserve(static_cast<std::size_t>(c.node_count) * c.file_count);
  for (int i = 0; i < b.file_count; ++i) {
    for (int copy = 0; copy < copies; ++copy) {
      for (int k = 0; k < b.node_count; ++k) c.grid.push_back(b.at(i, k));
    }
  }
  return c;
}

WmrArray construct_case_b(int node_count, int load) {
  const int K = node_count;
  const int r = load;
  if (K < 1 || r < 1)
    fail(Errc::invalid_load,
         "need K >= 1 and r >= 1, got K=" + std::to_string(K) + " r=" +
             std::to_string(r));
  if (K % r != 0)
    fail(Errc::not_divisible,
         "case (b) needs r | K, got K=" + std::to_string(K) + " r=" +
             std::to_string(r));
  const int t = K / r;
  if (t < 2)
    fail(Errc::not_divisible, "case (b) needs K/r >= 2, got K/r = " +
                                  std::to_string(t));
  return concat_horizontal(construct_case_b_base(t), r);
}

}  // namespace wmra
