#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/regime.hpp"

using namespace nlsfilt;

TEST_CASE("d = 3, s0 = 1 is admissible with b0 in (1/2, 5/8)") {
  const RegimeResult r = regime_check({3, 1.0, std::nullopt});
  CHECK(r.admissible);
  CHECK(r.b0_lo == 0.5);
  CHECK(r.b0_hi == 0.625);
  CHECK(!r.b0_interval_empty);
  CHECK(r.table1_case == 2);
}

TEST_CASE("d = 5, s0 = 1.4 is inadmissible") {
  const RegimeResult r = regime_check({5, 1.4, std::nullopt});
  CHECK(!r.admissible);
  CHECK(r.s0_lower == 1.5);
}

TEST_CASE("d = 3, s0 = 0.7 falls in the first case") {
  const RegimeResult r = regime_check({3, 0.7, std::nullopt});
  REQUIRE(r.table1_case == 1);
  CHECK(r.case_interval->str() == "(1/2, 4/5]");
  CHECK(r.case_pair->p_str() == "15");
  CHECK(r.case_pair->q.str() == "30/7");
}

TEST_CASE("b1 = 1 - b0 and interval membership is open") {
  const RegimeResult inside = regime_check({2, 1.0, 0.6});
  CHECK(*inside.b1 == 1.0 - 0.6);
  CHECK(*inside.b0_in_interval);
  const RegimeResult edge = regime_check({2, 1.0, 0.5});
  CHECK(!*edge.b0_in_interval);
  const RegimeResult top = regime_check({1, 2.0, 0.75});
  CHECK(top.b0_hi == 0.75);
  CHECK(!*top.b0_in_interval);
}

TEST_CASE("s0 above 2 or at the lower bound is inadmissible") {
  CHECK(!regime_check({1, 2.5, std::nullopt}).admissible);
  CHECK(!regime_check({1, 0.0, std::nullopt}).admissible);
  CHECK(!regime_check({3, 0.5, std::nullopt}).admissible);
  CHECK(regime_check({3, 0.5000001, std::nullopt}).admissible);
  CHECK(regime_check({1, 2.0, std::nullopt}).admissible);
}

TEST_CASE("b0 interval lies in (1/2, 3/4) and is empty exactly when s0 <= d/2 - 1") {
  for (int d = 1; d <= 5; ++d) {
    for (double s0 = -1.0; s0 <= 3.0; s0 += 1.0 / 64) {
      const RegimeResult r = regime_check({d, s0, std::nullopt});
      CHECK(r.b0_lo == 0.5);
      CHECK(r.b0_hi <= 0.75);
      CHECK(r.b0_interval_empty == (s0 <= d / 2.0 - 1.0));
    }
  }
}

TEST_CASE("dimension gate") {
  CHECK_THROWS_AS(regime_check({0, 1.0, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(regime_check({6, 1.0, std::nullopt}), ConfigError);
}
