#include "doctest.h"

#include "support.hpp"

TEST_CASE("lemma transformations re-verify on random cases") {
  const auto t = support::run_properties(500, 20240601);
  for (const auto &f : t.failures)
    MESSAGE(f);
  CHECK(t.cases == 500);
  CHECK(t.failed == 0);
  CHECK(t.quotient_lifts > 0);
  CHECK(t.sandwiches > 0);
  CHECK(t.duality > 0);
}
