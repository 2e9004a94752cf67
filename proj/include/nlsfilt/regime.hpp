#pragma once

#include <array>
#include <optional>
#include <string>

namespace nlsfilt {

struct Fraction {
  long num = 0;
  long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Fraction&) const = default;
};

// Half-open interval (lo, hi].
struct HalfOpenInterval {
  Fraction lo;
  Fraction hi;

  bool contains(double x) const { return x > lo.value() && x <= hi.value(); }
  std::string str() const;
};

// Hoelder exponent pair; p == nullopt means p = infinity.
struct ExponentPair {
  std::optional<Fraction> p;
  Fraction q;

  std::string p_str() const { return p ? p->str() : "inf"; }
};

// Dimension-dependent s0 ranges and (p, q) exponents of the local-error
// argument. The standard pair serves the first two s0 cases, the crude pair
// the third.
struct Table1Column {
  int d = 0;
  std::array<HalfOpenInterval, 3> cases;
  ExponentPair standard;
  ExponentPair crude;
};

// Throws ConfigError for d outside 1..5.
const Table1Column& table1_column(int d);

struct RegimeQuery {
  int d = 3;
  double s0 = 1.0;
  std::optional<double> b0;
};

struct RegimeResult {
  RegimeQuery query;
  bool admissible = false;
  double s0_lower = 0.0;       // s0 must exceed max(0, d/2 - 1)
  std::string s0_condition;    // human-readable form of the s0 constraint
  double b0_lo = 0.5;          // open interval (b0_lo, b0_hi)
  double b0_hi = 0.5;
  bool b0_interval_empty = true;
  std::optional<double> b1;             // 1 - b0 when b0 supplied
  std::optional<bool> b0_in_interval;   // when b0 supplied
  int table1_case = 0;                  // 1..3, or 0 when s0 is in no case
  std::optional<HalfOpenInterval> case_interval;
  std::optional<ExponentPair> case_pair;
  Table1Column column;
};

// s0 > max(0, d/2 - 1), s0 <= 2 and b0 in (1/2, min(1/2 + (s0 - d/2 + 1)/4, 3/4)).
RegimeResult regime_check(const RegimeQuery& q);

}  // namespace nlsfilt
