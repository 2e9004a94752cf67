#include "nlsfilt/regime.hpp"

#include <algorithm>
#include <sstream>

#include "nlsfilt/errors.hpp"

namespace nlsfilt {

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string HalfOpenInterval::str() const { return "(" + lo.str() + ", " + hi.str() + "]"; }

namespace {

constexpr Fraction F(long n, long d = 1) { return {n, d}; }

const std::array<Table1Column, 5>& table1() {
  static const std::array<Table1Column, 5> table{{
      {1, {{{F(0), F(1, 5)}, {F(1, 5), F(4, 3)}, {F(4, 3), F(2)}}}, {F(20), F(10, 3)}, {std::nullopt, F(6)}},
      {2, {{{F(0), F(2, 5)}, {F(2, 5), F(4, 3)}, {F(4, 3), F(2)}}}, {F(20), F(10, 3)}, {std::nullopt, F(6)}},
      {3, {{{F(1, 2), F(4, 5)}, {F(4, 5), F(3, 2)}, {F(3, 2), F(2)}}}, {F(15), F(30, 7)}, {std::nullopt, F(6)}},
      {4, {{{F(1), F(6, 5)}, {F(6, 5), F(5, 3)}, {F(5, 3), F(2)}}}, {F(40, 3), F(5)}, {F(40), F(20, 3)}},
      {5, {{{F(3, 2), F(8, 5)}, {F(8, 5), F(11, 6)}, {F(11, 6), F(2)}}}, {F(25, 2), F(50, 9)}, {F(25), F(50, 7)}},
  }};
  return table;
}

}  // namespace

const Table1Column& table1_column(int d) {
  if (d < 1 || d > 5) throw ConfigError("dimension must be in 1..5, got " + std::to_string(d));
  return table1()[static_cast<std::size_t>(d - 1)];
}

RegimeResult regime_check(const RegimeQuery& q) {
  RegimeResult r;
  r.query = q;
  r.column = table1_column(q.d);
  const double half_d = 0.5 * q.d;

  r.s0_lower = std::max(0.0, half_d - 1.0);
  r.admissible = q.s0 > r.s0_lower && q.s0 <= 2.0;
  std::ostringstream cond;
  cond << "s0 > max(0, d/2 - 1) = " << r.s0_lower << " and s0 <= 2";
  r.s0_condition = cond.str();

  r.b0_lo = 0.5;
  r.b0_hi = std::min(0.5 + (q.s0 - half_d + 1.0) / 4.0, 0.75);
  r.b0_interval_empty = !(r.b0_hi > r.b0_lo);
  if (q.b0) {
    r.b1 = 1.0 - *q.b0;
    r.b0_in_interval = *q.b0 > r.b0_lo && *q.b0 < r.b0_hi;
  }

  for (int c = 0; c < 3; ++c) {
    const auto& interval = r.column.cases[static_cast<std::size_t>(c)];
    if (interval.contains(q.s0)) {
      r.table1_case = c + 1;
      r.case_interval = interval;
      r.case_pair = c < 2 ? r.column.standard : r.column.crude;
      break;
    }
  }
  return r;
}

}  // namespace nlsfilt
