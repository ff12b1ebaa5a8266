#include <doctest.h>

#include "mgtlc/proptest.h"

using namespace mgtlc;

TEST_SUITE("oracles") {
  TEST_CASE("exhaustive small oracles") {
    OracleReport r = enumerate_small_oracles();
    for (const auto &f : r.coerce.failures) MESSAGE(f);
    for (const auto &f : r.dichotomy.failures) MESSAGE(f);
    for (const auto &f : r.identity.failures) MESSAGE(f);
    for (const auto &f : r.terms.failures) MESSAGE(f);
    CHECK(r.coerce.pairs == 494 * 494);
    CHECK(r.dichotomy.ground_pairs == 36);
    CHECK(r.dichotomy.code_pairs == 400);
    // Every core term of at most 7 nodes over the fixed alphabet.
    CHECK(r.terms.terms > 1000000);
    CHECK(r.terms.code_typed > 0);
    CHECK(r.passed());
  }
}
