#pragma once

// Eudoxus cuts: a ratio seen through the fractions it lies above and below.

#include "eudoxus/fraction.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace eudoxus {

/// Raised when a cut oracle answers inconsistently with monotonicity.
class CorruptedOracle : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Order queries against a hidden ratio lambda = a':a.
 *
 * strict_above(m, n) answers n*a' < m*a (the fraction m/n lies strictly above
 * lambda); exact_hit(m, n) answers n*a' = m*a. Numerators may be negative; the
 * denominator is always positive.
 */
struct CutOracle {
  std::function<bool(const BigInt& m, const BigInt& n)> strict_above;
  std::function<bool(const BigInt& m, const BigInt& n)> exact_hit;
};

/// The three classes a ratio cuts the fractions into.
enum class FractionClass {
  I,    ///< below the ratio
  II,   ///< equal to the ratio
  III,  ///< above the ratio
};

inline const char* to_string(FractionClass c) {
  switch (c) {
    case FractionClass::I: return "I";
    case FractionClass::II: return "II";
    case FractionClass::III: return "III";
  }
  return "?";
}

inline FractionClass classify_fraction(const Fraction& q, const CutOracle& oracle) {
  const bool hit = oracle.exact_hit(q.num(), q.den());
  const bool above = oracle.strict_above(q.num(), q.den());
  if (hit && above)
    throw CorruptedOracle("cut oracle reports " + q.to_string() + " both equal to and above the ratio");
  if (hit) return FractionClass::II;
  return above ? FractionClass::III : FractionClass::I;
}

/// Oracle for the exact rational cut p/q (used for classic segments and tests).
inline CutOracle rational_cut(const Fraction& value) {
  return CutOracle{
      [value](const BigInt& m, const BigInt& n) { return value < Fraction(m, n); },
      [value](const BigInt& m, const BigInt& n) { return value == Fraction(m, n); },
  };
}

struct Bracket {
  Fraction lo;
  Fraction hi;
  bool exact = false;  ///< the oracle hit a fraction exactly; lo == hi

  bool contains(double x) const { return lo.to_double() <= x && x <= hi.to_double(); }
  double width() const { return (hi - lo).to_double(); }
};

namespace detail {

// Stern-Brocot descent for a cut known to be strictly positive. Runs of
// same-direction steps are galloped (the classes along a run are monotone),
// so the cost is logarithmic in max_den rather than linear.
inline Bracket descend_positive(const CutOracle& oracle, const BigInt& max_den) {
  BigInt lo_n = 0, lo_d = 1, hi_n = 1, hi_d = 0;

  auto classify = [&](const BigInt& m, const BigInt& n) {
    const bool hit = oracle.exact_hit(m, n);
    const bool above = oracle.strict_above(m, n);
    if (hit && above)
      throw CorruptedOracle("cut oracle reports " + m.str() + "/" + n.str() +
                            " both equal to and above the ratio");
    if (hit) return FractionClass::II;
    return above ? FractionClass::III : FractionClass::I;
  };

  for (;;) {
    const BigInt med_n = lo_n + hi_n;
    const BigInt med_d = lo_d + hi_d;
    if (med_d > max_den) break;
    const FractionClass c = classify(med_n, med_d);
    if (c == FractionClass::II) {
      Fraction hit(med_n, med_d);
      return Bracket{hit, hit, true};
    }
    // Walking direction: lo moves toward hi (class I) or hi toward lo (class III).
    // Step k puts the probe at base + k * toward.
    const bool move_lo = c == FractionClass::I;
    const BigInt& base_n = move_lo ? lo_n : hi_n;
    const BigInt& base_d = move_lo ? lo_d : hi_d;
    const BigInt& tow_n = move_lo ? hi_n : lo_n;
    const BigInt& tow_d = move_lo ? hi_d : lo_d;
    auto probe_ok = [&](const BigInt& k) {
      const BigInt d = base_d + k * tow_d;
      if (d > max_den) return false;
      return classify(base_n + k * tow_n, d) == c;
    };
    // k = 1 is the mediant, known to be in class c. Find the last k in class c.
    BigInt good = 1, bad = 2;
    while (probe_ok(bad)) {
      good = bad;
      bad *= 2;
    }
    while (bad - good > 1) {
      BigInt mid = (good + bad) / 2;
      if (probe_ok(mid))
        good = mid;
      else
        bad = mid;
    }
    BigInt new_n = base_n + good * tow_n;
    BigInt new_d = base_d + good * tow_d;
    if (move_lo) {
      lo_n = std::move(new_n);
      lo_d = std::move(new_d);
    } else {
      hi_n = std::move(new_n);
      hi_d = std::move(new_d);
    }
  }
  if (hi_d == 0) throw std::domain_error("stern_brocot_bracket: cut is unbounded for this max_den");
  return Bracket{Fraction(lo_n, lo_d), Fraction(hi_n, hi_d), false};
}

}  // namespace detail

/**
 * Brackets the cut between two Farey neighbours with denominators at most
 * max_den, by mediant descent from the root (0/1, 1/0). An exact hit returns
 * lo == hi. Negative cuts are reflected before the search; zero is tested first.
 */
inline Bracket stern_brocot_bracket(const CutOracle& oracle, const BigInt& max_den) {
  if (max_den <= 0) throw std::invalid_argument("stern_brocot_bracket: max_den must be positive");
  const FractionClass at_zero = classify_fraction(Fraction(0), oracle);
  if (at_zero == FractionClass::II) return Bracket{Fraction(0), Fraction(0), true};
  if (at_zero == FractionClass::I) return detail::descend_positive(oracle, max_den);

  // Cut is negative: search for -lambda with the mirrored oracle.
  CutOracle mirrored{
      [&oracle](const BigInt& m, const BigInt& n) {
        return !oracle.strict_above(-m, n) && !oracle.exact_hit(-m, n);
      },
      [&oracle](const BigInt& m, const BigInt& n) { return oracle.exact_hit(-m, n); },
  };
  Bracket b = detail::descend_positive(mirrored, max_den);
  return Bracket{-b.hi, -b.lo, b.exact};
}

inline Bracket stern_brocot_bracket(const CutOracle& oracle, std::int64_t max_den) {
  return stern_brocot_bracket(oracle, BigInt(max_den));
}

}  // namespace eudoxus
