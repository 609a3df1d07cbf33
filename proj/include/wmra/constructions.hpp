#pragma once

#include "wmra/array.hpp"

namespace wmra {

// (K, K, r, K-r) array for 2r >= K: stars at (i - k) mod K < r, slot s in
// column k at row (k - 1 + r + s) wrapped into [K]. r = K yields the all-star
// array with S = 0.
WmrArray construct_case_a(int node_count, int load);

// (t, t, 1, t(t-1)/2) array with diagonal stars; slot s = u(u-1)/2 + v sits
// symmetrically at (v, t-u+v) and (t-u+v, v). Requires t >= 2.
WmrArray construct_case_b_base(int t);

// `copies` side-by-side copies of b: K and r multiply, N and S are unchanged.
WmrArray concat_horizontal(const WmrArray& b, int copies);

// (K, K/r, r, t(t-1)/2) array for K = t*r, t >= 2: the base array tiled r
// times.
WmrArray construct_case_b(int node_count, int load);

}  // namespace wmra
