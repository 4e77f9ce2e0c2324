#pragma once

// Classical ratios of segments on a single ray, in exact rational arithmetic.

#include "eudoxus/cut.hpp"
#include "eudoxus/fraction.hpp"

#include <stdexcept>
#include <vector>

namespace eudoxus {

/// antecedent : consequent, both positive segments measured by a common unit.
struct ClassicRatio {
  Fraction antecedent;
  Fraction consequent;

  ClassicRatio(Fraction a, Fraction b) : antecedent(std::move(a)), consequent(std::move(b)) {
    if (!antecedent.is_positive() || !consequent.is_positive())
      throw std::invalid_argument("ClassicRatio: segments must be positive");
  }

  Fraction value() const { return antecedent / consequent; }

  /// n a' vs m a: the fraction m/n is above the ratio when n a' < m a.
  CutOracle oracle() const {
    return CutOracle{
        [a1 = antecedent, a = consequent](const BigInt& m, const BigInt& n) {
          return Fraction(n, BigInt(1)) * a1 < Fraction(m, BigInt(1)) * a;
        },
        [a1 = antecedent, a = consequent](const BigInt& m, const BigInt& n) {
          return Fraction(n, BigInt(1)) * a1 == Fraction(m, BigInt(1)) * a;
        },
    };
  }
};

enum class CheckOutcome { Holds, Fails, Vacuous };

inline const char* to_string(CheckOutcome c) {
  switch (c) {
    case CheckOutcome::Holds: return "Holds";
    case CheckOutcome::Fails: return "Fails";
    case CheckOutcome::Vacuous: return "Vacuous";
  }
  return "?";
}

/// Simplest fraction strictly between x < y (least denominator, then least numerator).
inline Fraction simplest_between(const Fraction& x, const Fraction& y) {
  if (!(x < y)) throw std::invalid_argument("simplest_between: empty interval");
  // Integer part first; otherwise recurse on reciprocals of the fractional parts.
  auto floor_of = [](const Fraction& f) {
    BigInt q = f.num() / f.den();
    if (f.num() < 0 && q * f.den() != f.num()) q -= 1;
    return q;
  };
  const BigInt fx = floor_of(x);
  const Fraction next(fx + 1, BigInt(1));
  if (next < y) {
    if (x < Fraction(0) && Fraction(0) < y) return Fraction(0);
    if (y <= Fraction(0)) {
      BigInt c = floor_of(y);
      if (Fraction(c, BigInt(1)) == y) c -= 1;
      return Fraction(c, BigInt(1));
    }
    return next;
  }
  const Fraction base(fx, BigInt(1));
  Fraction lo = x - base;
  Fraction hi = y - base;
  if (lo.is_zero()) {
    // interval (0, hi) with hi <= 1: 1/n with the smallest n such that 1/n < hi
    BigInt n = hi.den() / hi.num() + 1;
    return base + Fraction(BigInt(1), n);
  }
  Fraction inner = simplest_between(Fraction(1) / hi, Fraction(1) / lo);
  return base + Fraction(1) / inner;
}

struct ClassicEquality {
  bool three_class = false;
  bool two_class = false;
};

/**
 * Eudoxus-Euclid equality evaluated on the decisive fractions: the Farey
 * brackets of both ratios at max_den, both values, and the simplest fraction
 * strictly between the values when they differ.
 */
inline ClassicEquality classic_equality(const ClassicRatio& r, const ClassicRatio& s, std::int64_t max_den = 1000) {
  std::vector<Fraction> decisive;
  for (const ClassicRatio* x : {&r, &s}) {
    Bracket b = stern_brocot_bracket(x->oracle(), max_den);
    decisive.push_back(b.lo);
    decisive.push_back(b.hi);
    decisive.push_back(x->value());
  }
  if (r.value() != s.value()) {
    const bool lt = r.value() < s.value();
    decisive.push_back(simplest_between(lt ? r.value() : s.value(), lt ? s.value() : r.value()));
  }
  ClassicEquality out{true, true};
  const CutOracle o1 = r.oracle();
  const CutOracle o2 = s.oracle();
  for (const Fraction& q : decisive) {
    if (!q.is_positive()) continue;
    const FractionClass c1 = classify_fraction(q, o1);
    const FractionClass c2 = classify_fraction(q, o2);
    if (c1 != c2) out.three_class = false;
    if ((c1 == FractionClass::III) != (c2 == FractionClass::III)) out.two_class = false;
  }
  return out;
}

inline bool classic_equal(const ClassicRatio& r, const ClassicRatio& s) { return classic_equality(r, s).three_class; }

/// (a:b)(c:d) = (a'':b'')(b'':d'') = a'':d'' with b'' = c, a'' = a c / b, d'' = d.
inline ClassicRatio classic_compose(const ClassicRatio& r, const ClassicRatio& s) {
  return {r.antecedent * s.antecedent / r.consequent, s.consequent};
}

/// (a:b) + (c:d) over the common consequent b d.
inline ClassicRatio classic_add(const ClassicRatio& r, const ClassicRatio& s) {
  const Fraction common = r.consequent * s.consequent;
  return {r.antecedent * s.consequent + s.antecedent * r.consequent, common};
}

/// If a:b = b':c' and b:c = a':b' then a:c = a':c'.
inline CheckOutcome ex_aequali_check(const Fraction& a, const Fraction& b, const Fraction& c, const Fraction& a1,
                                     const Fraction& b1, const Fraction& c1) {
  if (!classic_equal({a, b}, {b1, c1}) || !classic_equal({b, c}, {a1, b1})) return CheckOutcome::Vacuous;
  return classic_equal({a, c}, {a1, c1}) ? CheckOutcome::Holds : CheckOutcome::Fails;
}

/// If a':a = b':b then (a'+b'):(a+b) equals both.
inline CheckOutcome compositio_check(const Fraction& a1, const Fraction& a, const Fraction& b1, const Fraction& b) {
  const ClassicRatio r{a1, a};
  const ClassicRatio s{b1, b};
  if (!classic_equal(r, s)) return CheckOutcome::Vacuous;
  const ClassicRatio whole{a1 + b1, a + b};
  return classic_equal(whole, r) && classic_equal(whole, s) ? CheckOutcome::Holds : CheckOutcome::Fails;
}

}  // namespace eudoxus
