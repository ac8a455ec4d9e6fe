#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "nsplit/bounds.hpp"

using namespace nsplit;

TEST_CASE("frozen color-count bounds") {
  CHECK(f_bound(1, 1) == 8);
  CHECK(f_bound(2, 1) == 23);
  CHECK(f_bound(1, 2) == 10);
}

TEST_CASE("dimension-count value matches its closed form on the whole desk range") {
  for (int d = 1; d <= 8; ++d)
    for (int t = 0; t <= 8; ++t)
      CHECK(d_value(d, t) == d_closed_form(d, t));
}

TEST_CASE("frozen dimension-count values") {
  // one dimension: every interior box is a full slab, nothing is lost
  for (int t = 0; t <= 6; ++t) CHECK(d_value(1, t) == 0);
  CHECK(d_value(2, 1) == 6);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(f_bound(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(f_bound(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(d_value(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(d_value(1, -1), std::invalid_argument);
}

TEST_CASE("overflow is an error, not a wrap") {
  CHECK_THROWS_AS(f_bound(60, 1000), std::overflow_error);
}
