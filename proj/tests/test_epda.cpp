#include <doctest.h>

#include <numeric>

#include "golden.hpp"
#include "wmra/constructions.hpp"
#include "wmra/epda.hpp"

using wmra::Epda;
using wmra::WmrArray;

namespace {

Epda epda_from_grid(const WmrArray& a, int load, int column_stars,
                    int regularity) {
  Epda e;
  e.node_count = a.node_count;
  e.file_count = a.file_count;
  e.load = load;
  e.column_stars = column_stars;
  e.slot_count = a.slot_count;
  e.regularity = regularity;
  e.grid = a.grid;
  return e;
}

// C read as a 4-regular (6,2,3,1,3) EPDA
Epda c_as_epda() { return epda_from_grid(golden::array_c(), 2, 1, 4); }

}  // namespace

TEST_CASE("array C verifies as a 4-regular (6,2,3,1,3) EPDA") {
  CHECK(wmra::verify_epda(c_as_epda()).passed());
}

TEST_CASE("a verified array reinterprets as an EPDA when Z is integral") {
  // case-a (5,3): columns carry r = 3 consecutive stars, Z = N*r/K = 3
  const Epda e = epda_from_grid(golden::case_a_53(), 3, 3, 5);
  CHECK(wmra::verify_epda(e).passed());
}

TEST_CASE("deleting a star breaks condition (i)") {
  Epda e = c_as_epda();
  e.at(0, 0) = wmra::Entry::slot(1);  // also breaks regularity, but (i) first
  const auto report = wmra::verify_epda(e);
  CHECK_FALSE(report.passed());
  bool column_stars_violation = false;
  for (const auto& v : report.violations)
    if (v.condition == wmra::Cond::EpdaColumnStars) column_stars_violation = true;
  CHECK(column_stars_violation);
}

TEST_CASE("conversion reproduces C exactly") {
  const WmrArray a = wmra::wmra_from_epda(c_as_epda());
  CHECK(a == golden::array_c());
  CHECK(wmra::verify(a).passed());
  CHECK(static_cast<long long>(a.slot_count) * 2 * a.load ==
        static_cast<long long>(a.file_count) * (a.node_count - a.load));
}

TEST_CASE("conversion rejects g != 2r") {
  // case-a grid has g = K = 5 < 2r = 6
  const Epda e = epda_from_grid(golden::case_a_53(), 3, 3, 5);
  try {
    wmra::wmra_from_epda(e);
    FAIL("expected not_regular_2r");
  } catch (const wmra::Error& err) {
    CHECK(err.code() == wmra::Errc::not_regular_2r);
  }
}

TEST_CASE("conversion rejects KZ/N != r") {
  // declared Z = 2 breaks K*Z = N*r before verification sees the grid
  Epda e = epda_from_grid(golden::array_c(), 2, 2, 4);
  try {
    wmra::wmra_from_epda(e);
    FAIL("expected load_mismatch");
  } catch (const wmra::Error& err) {
    CHECK(err.code() == wmra::Errc::load_mismatch);
  }
}

TEST_CASE("conversion rejects rows without exactly r stars") {
  // swap the star and the integer of column 1 between rows 1 and 2: column
  // star counts survive, rows drift to 1 and 3 stars
  Epda e = c_as_epda();
  CHECK(e.at(0, 0).is_star());
  CHECK(e.at(1, 0).slot_index() == 2);
  e.at(0, 0) = wmra::Entry::slot(2);
  e.at(1, 0) = wmra::Entry::star();
  try {
    wmra::wmra_from_epda(e);
    FAIL("expected row_star_mismatch");
  } catch (const wmra::Error& err) {
    CHECK(err.code() == wmra::Errc::row_star_mismatch);
  }
}

TEST_CASE("conversion rejects EPDAs that fail verification outright") {
  // relabel one slot-2 cell to 3: regularity of both slots breaks while the
  // Lemma hypotheses (g = 2r, K*Z = N*r, r stars per row) still hold
  Epda e = c_as_epda();
  CHECK(e.at(0, 1).slot_index() == 2);
  e.at(0, 1) = wmra::Entry::slot(3);
  try {
    wmra::wmra_from_epda(e);
    FAIL("expected invalid_array");
  } catch (const wmra::Error& err) {
    CHECK(err.code() == wmra::Errc::invalid_array);
  }
}

TEST_CASE("a small base array converts as a 2-regular EPDA") {
  const WmrArray b3 = wmra::construct_case_b_base(3);
  const Epda e = epda_from_grid(b3, 1, 1, 2);
  CHECK(wmra::verify_epda(e).passed());
  CHECK(wmra::wmra_from_epda(e) == b3);
}

TEST_CASE("corollary parameters match direct substitution") {
  const auto p62 = wmra::corollary1_params(6, 2);
  CHECK(p62.file_count == 6);
  CHECK(p62.slot_count == 6);
  CHECK(p62.delivery_time == wmra::Rational::of(1, 6));

  const auto p42 = wmra::corollary1_params(4, 2);
  CHECK(p42.file_count == 4);
  CHECK(p42.slot_count == 2);
  CHECK(p42.delivery_time == wmra::Rational::of(1, 8));

  const auto p21 = wmra::corollary1_params(2, 1);
  CHECK(p21.file_count == 4);
  CHECK(p21.slot_count == 2);
  CHECK(p21.delivery_time == wmra::Rational::of(1, 4));

  try {
    wmra::corollary1_params(6, 4);
    FAIL("expected invalid_load");
  } catch (const wmra::Error& e) {
    CHECK(e.code() == wmra::Errc::invalid_load);
  }
}

TEST_CASE("corollary parameters are integral over the sweep") {
  for (int K = 2; K <= 64; ++K) {
    for (int r = 1; 2 * r <= K; ++r) {
      const auto p = wmra::corollary1_params(K, r);
      const long long g = std::gcd(K, r);
      // recompute with explicit divisibility checks
      CHECK(2LL * K * r % (g * g) == 0);
      CHECK(p.file_count == 2LL * K * r / (g * g));
      CHECK(p.file_count * (K - r) % (2 * r) == 0);
      CHECK(p.slot_count == p.file_count * (K - r) / (2 * r));
      CHECK(p.delivery_time == wmra::Rational::of(K - r, 2LL * r * K));
    }
  }
}

TEST_CASE("EPDA text and JSON round trips") {
  const Epda e = c_as_epda();
  const Epda via_text = wmra::parse_epda(wmra::serialize_epda_text(e));
  CHECK(via_text == e);
  const Epda via_json = wmra::epda_from_json(wmra::epda_to_json(e));
  CHECK(via_json == e);

  try {
    wmra::parse_epda("* 1\n1 *\n");  // missing header
    FAIL("expected bad_format");
  } catch (const wmra::Error& err) {
    CHECK(err.code() == wmra::Errc::bad_format);
  }
}
