#pragma once

// Frozen reference arrays shared by the unit and acceptance suites. The
// first four are transcribed (stars as '*'); the hand-derived ones were
// evaluated from the construction rules by hand before being frozen here.

#include <string>

#include "wmra/array.hpp"

namespace golden {

// (5,5,3,2), the stand-alone verification example
inline const std::string kExample1 =
    "* 1 1 * *\n"
    "* * 2 1 *\n"
    "* * * 2 1\n"
    "1 * * * 2\n"
    "2 2 * * *\n";

// (5,5,3,2) as produced by the case-a rule for K=5, r=3
inline const std::string kCaseA53 =
    "* 2 1 * *\n"
    "* * 2 1 *\n"
    "* * * 2 1\n"
    "1 * * * 2\n"
    "2 1 * * *\n";

// (3,3,1,3) base array B for t=3
inline const std::string kBaseB3 =
    "* 2 1\n"
    "2 * 3\n"
    "1 3 *\n";

// (6,3,2,3) array C = [B B]
inline const std::string kArrayC =
    "* 2 1 * 2 1\n"
    "2 * 3 2 * 3\n"
    "1 3 * 1 3 *\n";

// hand-derived: case-a K=2, r=1
inline const std::string kCaseA21 =
    "* 1\n"
    "1 *\n";

// hand-derived: base array for t=2
inline const std::string kBaseB2 =
    "* 1\n"
    "1 *\n";

// hand-derived: base array for t=4 (s = u(u-1)/2 + v at (v, t-u+v) mirrored)
inline const std::string kBaseB4 =
    "* 4 2 1\n"
    "4 * 5 3\n"
    "2 5 * 6\n"
    "1 3 6 *\n";

// hand-derived: case-b K=6, r=3 (t=2 base tiled three times)
inline const std::string kCaseB63 =
    "* 1 * 1 * 1\n"
    "1 * 1 * 1 *\n";

inline wmra::WmrArray example1() { return wmra::parse_array(kExample1); }
inline wmra::WmrArray case_a_53() { return wmra::parse_array(kCaseA53); }
inline wmra::WmrArray base_b3() { return wmra::parse_array(kBaseB3); }
inline wmra::WmrArray array_c() { return wmra::parse_array(kArrayC); }

}  // namespace golden
