#pragma once

#include "wmra/array.hpp"
#include "wmra/rational.hpp"

namespace wmra {

// Extended placement delivery array: N x K grid of stars and slot integers
// with Z stars per column, every slot appearing exactly `regularity` times
// (at most once per column), and the A3 row bound taken at `load`.
struct Epda {
  int node_count = 0;   // K
  int load = 0;         // r
  int file_count = 0;   // N
  int column_stars = 0; // Z
  int slot_count = 0;   // S
  int regularity = 0;   // g
  std::vector<Entry> grid;  // row-major, file_count x node_count

  Entry at(int file, int node) const { return grid[file * node_count + node]; }
  Entry& at(int file, int node) { return grid[file * node_count + node]; }

  friend bool operator==(const Epda&, const Epda&) = default;
};

// Conditions (i) Z stars per column, (ii) exact regularity with at most one
// occurrence per column, (iii) A3 at bound `load`.
VerificationReport verify_epda(const Epda& e);

// A 2r-regular EPDA with r = K*Z/N and exactly r stars per row is a wireless
// MapReduce array with the same grid. Throws not_regular_2r, load_mismatch or
// row_star_mismatch when a hypothesis fails, invalid_array when the EPDA
// itself does not verify.
WmrArray wmra_from_epda(const Epda& e);

// Dimensions of the known EPDA family for a given (K, r <= K/2):
// N = 2Kr/gcd(K,r)^2, S = N(K-r)/2r, delivery time (1 - r/K)/2r. Always
// integral.
struct Corollary1Params {
  long long file_count = 0;  // N
  long long slot_count = 0;  // S
  Rational delivery_time;    // L
};

Corollary1Params corollary1_params(int node_count, int load);

// Text format: header `# epda K= r= N= Z= S= g=` followed by the grid. The
// non-inferable fields r and g are required; the rest are cross-checked when
// present.
Epda parse_epda(std::string_view text);
Epda epda_from_json(const nlohmann::json& j);
nlohmann::json epda_to_json(const Epda& e);
std::string serialize_epda_text(const Epda& e);
Epda parse_epda_auto(std::string_view text);

}  // namespace wmra
