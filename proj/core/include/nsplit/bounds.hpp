#pragma once

#include <cstdint>

namespace nsplit {

// Upper bound on the number of cuts per axis that always suffices for a
// fair two-family splitting of a d-dimensional necklace with t+1 colors:
//   f(d,t) = (t+4)^d - (t+3)^d + (t+2)^d - 2^d + d(t+2) + 3.
// Requires d >= 1, t >= 1; throws std::invalid_argument otherwise and
// std::overflow_error if the value does not fit in int64.
std::int64_t f_bound(int d, int t);

// Worst-case count of degenerate direction patterns in the moving-knife
// argument behind f_bound, as the explicit sum
//   D(d,t) = sum_{i=1..d} C(d,i) (t+2)^i (2^(d-i) - 1).
std::int64_t d_value(int d, int t);

// The same quantity in closed form:
//   D(d,t) = (t+4)^d + 1 - (t+3)^d - 2^d.
std::int64_t d_closed_form(int d, int t);

}  // namespace nsplit
