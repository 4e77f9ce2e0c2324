// Exact arithmetic: fractions, cuts, classic ratios, step figures, conjunct words, cone spec files.

#include "eudoxus/eudoxus.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace eudoxus;
using Rational = boost::multiprecision::cpp_rational;

namespace {

Rational as_rational(const Fraction& f) { return Rational(f.num(), f.den()); }

/// Farey neighbours of v among denominators <= n, by enumerating every denominator.
std::pair<Fraction, Fraction> farey_brute_force(const std::function<BigInt(const BigInt&)>& floor_times,
                                                const std::function<bool(const BigInt&, const BigInt&)>& equal,
                                                int n) {
  Fraction lo(-1'000'000'000), hi(1'000'000'000);
  for (int d = 1; d <= n; ++d) {
    const BigInt f = floor_times(d);
    if (equal(f, d)) return {Fraction(f, d), Fraction(f, d)};
    lo = std::max(lo, Fraction(f, BigInt(d)));
    hi = std::min(hi, Fraction(f + 1, BigInt(d)));
  }
  return {lo, hi};
}

}  // namespace

// ---------------------------------------------------------------------------
// Fraction

TEST(Fraction, NormalizesSignAndLowestTerms) {
  Fraction f(6, -4);
  EXPECT_EQ(f.num(), -3);
  EXPECT_EQ(f.den(), 2);
  EXPECT_EQ(Fraction(0, -7).den(), 1);
  EXPECT_THROW(Fraction(1, 0), std::domain_error);
  EXPECT_THROW(Fraction(1) / Fraction(0), std::domain_error);
}

TEST(Fraction, ArithmeticMatchesBoostRational) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000), den(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Fraction a(num(rng), den(rng)), b(num(rng), den(rng));
    const Rational ra = as_rational(a), rb = as_rational(b);
    EXPECT_EQ(as_rational(a + b), ra + rb);
    EXPECT_EQ(as_rational(a - b), ra - rb);
    EXPECT_EQ(as_rational(a * b), ra * rb);
    if (!b.is_zero()) EXPECT_EQ(as_rational(a / b), ra / rb);
    EXPECT_EQ(a < b, ra < rb);
    EXPECT_EQ(a == b, ra == rb);
  }
}

TEST(Fraction, ComparisonNeverOverflows) {
  const Fraction big(BigInt("123456789012345678901234567890"), BigInt("987654321098765432109876543211"));
  const Fraction next(BigInt("123456789012345678901234567891"), BigInt("987654321098765432109876543211"));
  EXPECT_LT(big, next);
  EXPECT_EQ(compare(next, big), std::strong_ordering::greater);
}

TEST(Fraction, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(Fraction::parse("7"), Fraction(7));
  EXPECT_EQ(Fraction::parse("-3/6"), Fraction(-1, 2));
  EXPECT_EQ(Fraction::parse("-22.5"), Fraction(-45, 2));
  EXPECT_EQ(Fraction::parse(".25"), Fraction(1, 4));
  EXPECT_THROW(Fraction::parse("1/x"), std::invalid_argument);
  EXPECT_THROW(Fraction::parse(""), std::invalid_argument);
  EXPECT_THROW(Fraction::parse("."), std::invalid_argument);
}

TEST(Fraction, ToDoubleKeepsPrecisionForHugeParts) {
  const Fraction f(BigInt("100000000000000000000000000001"), BigInt("100000000000000000000000000000"));
  EXPECT_DOUBLE_EQ(f.to_double(), 1.0);
  EXPECT_DOUBLE_EQ(Fraction(-7, 2).to_double(), -3.5);
}

// ---------------------------------------------------------------------------
// Cuts

TEST(Cut, ClassifiesAgainstRationalCut) {
  const CutOracle o = rational_cut(Fraction(3, 7));
  EXPECT_EQ(classify_fraction(Fraction(1, 7), o), FractionClass::I);
  EXPECT_EQ(classify_fraction(Fraction(6, 14), o), FractionClass::II);
  EXPECT_EQ(classify_fraction(Fraction(1, 2), o), FractionClass::III);
}

TEST(Cut, CorruptedOracleIsReported) {
  CutOracle bad{[](const BigInt&, const BigInt&) { return true; }, [](const BigInt&, const BigInt&) { return true; }};
  EXPECT_THROW(classify_fraction(Fraction(1, 2), bad), CorruptedOracle);
  EXPECT_THROW(stern_brocot_bracket(bad, 10), CorruptedOracle);
}

TEST(Cut, BracketMatchesFareyEnumerationForRationals) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> num(-400, 400), den(1, 300);
  for (int i = 0; i < 300; ++i) {
    const Fraction v(num(rng), den(rng));
    const int n = static_cast<int>(std::uniform_int_distribution<int>(1, 100)(rng));
    const Rational rv = as_rational(v);
    auto floor_times = [&](const BigInt& d) {
      Rational x = rv * Rational(d);
      BigInt q = numerator(x) / denominator(x);
      if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
      return q;
    };
    auto equal = [&](const BigInt& m, const BigInt& d) { return Rational(m, d) == rv; };
    const auto [lo, hi] = farey_brute_force(floor_times, equal, n);
    const Bracket b = stern_brocot_bracket(rational_cut(v), n);
    EXPECT_EQ(b.lo, lo) << v << " at " << n;
    EXPECT_EQ(b.hi, hi) << v << " at " << n;
    EXPECT_EQ(b.exact, lo == hi);
  }
}

TEST(Cut, BracketMatchesFareyEnumerationForSurds) {
  for (int radicand : {2, 3, 5, 7, 10}) {
    CutOracle o{[radicand](const BigInt& m, const BigInt& n) { return m > 0 && m * m > radicand * n * n; },
                [radicand](const BigInt& m, const BigInt& n) { return m * m == radicand * n * n && m >= 0; }};
    auto floor_times = [radicand](const BigInt& d) { return boost::multiprecision::sqrt(BigInt(radicand * d * d)); };
    auto never = [](const BigInt&, const BigInt&) { return false; };
    for (int n : {1, 2, 5, 17, 64, 100}) {
      const auto [lo, hi] = farey_brute_force(floor_times, never, n);
      const Bracket b = stern_brocot_bracket(o, n);
      EXPECT_EQ(b.lo, lo) << "sqrt " << radicand << " at " << n;
      EXPECT_EQ(b.hi, hi) << "sqrt " << radicand << " at " << n;
      EXPECT_FALSE(b.exact);
    }
  }
}

TEST(Cut, BracketsAreFareyNeighbours) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> num(1, 1'000'000'000), den(1, 1'000'000'000);
  for (int i = 0; i < 200; ++i) {
    const Fraction v(num(rng), den(rng));
    const Bracket b = stern_brocot_bracket(rational_cut(v), 1'000'000);
    if (b.exact) continue;
    EXPECT_EQ(b.hi.num() * b.lo.den() - b.lo.num() * b.hi.den(), 1);
    EXPECT_LT(b.lo, v);
    EXPECT_LT(v, b.hi);
    EXPECT_LE(b.lo.den(), 1'000'000);
    EXPECT_LE(b.hi.den(), 1'000'000);
  }
}

TEST(Cut, SqrtTwoAtOneMillion) {
  CutOracle o{[](const BigInt& m, const BigInt& n) { return m > 0 && m * m > 2 * n * n; },
              [](const BigInt& m, const BigInt& n) { return m * m == 2 * n * n; }};
  const Bracket b = stern_brocot_bracket(o, 1'000'000);
  EXPECT_LT(b.lo * b.lo, Fraction(2));
  EXPECT_GT(b.hi * b.hi, Fraction(2));
  EXPECT_LT(b.width(), 1e-11);
}

TEST(Cut, NegativeAndZeroCuts) {
  EXPECT_TRUE(stern_brocot_bracket(rational_cut(Fraction(0)), 10).exact);
  const Bracket b = stern_brocot_bracket(rational_cut(Fraction(-7, 3)), 100);
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(b.lo, Fraction(-7, 3));
  const Bracket c = stern_brocot_bracket(rational_cut(Fraction(-1, 1000)), 10);
  EXPECT_EQ(c.lo, Fraction(-1, 10));
  EXPECT_EQ(c.hi, Fraction(0));
  EXPECT_THROW(stern_brocot_bracket(rational_cut(Fraction(1)), 0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Classic ratios

TEST(Classic, RejectsNonPositiveSegments) {
  EXPECT_THROW(ClassicRatio(Fraction(0), Fraction(1)), std::invalid_argument);
  EXPECT_THROW(ClassicRatio(Fraction(1), Fraction(-1)), std::invalid_argument);
}

TEST(Classic, SimplestBetweenMatchesEnumeration) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> num(-60, 60), den(1, 30);
  for (int i = 0; i < 400; ++i) {
    Fraction x(num(rng), den(rng)), y(num(rng), den(rng));
    if (x == y) continue;
    if (y < x) std::swap(x, y);
    Fraction best;
    bool found = false;
    for (std::int64_t d = 1; d <= 60 && !found; ++d) {
      // least |numerator| at the least denominator
      for (std::int64_t a = 0; a <= 60 * d && !found; ++a)
        for (std::int64_t m : {a, -a}) {
          const Fraction q(m, d);
          if (q.den() == d && x < q && q < y) {
            best = q;
            found = true;
            break;
          }
        }
    }
    ASSERT_TRUE(found);
    EXPECT_EQ(simplest_between(x, y), best) << x << " " << y;
  }
}

TEST(Classic, EqualityAgreesWithExhaustivePartitions) {
  // Classes over every fraction m/n with n <= 100 and m <= 1100.
  auto partition_equal = [](const ClassicRatio& r, const ClassicRatio& s) {
    const Rational vr = as_rational(r.value()), vs = as_rational(s.value());
    for (int n = 1; n <= 100; ++n)
      for (int m = 1; m <= 1100; ++m) {
        const Rational q(m, n);
        if ((q < vr) != (q < vs) || (q == vr) != (q == vs)) return false;
      }
    return true;
  };
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> d(1, 10);
  for (int i = 0; i < 150; ++i) {
    const ClassicRatio r{Fraction(d(rng)), Fraction(d(rng))};
    const std::int64_t k = d(rng);
    const ClassicRatio s = i % 3 == 0 ? ClassicRatio{r.antecedent * Fraction(k), r.consequent * Fraction(k)}
                                      : ClassicRatio{Fraction(d(rng)), Fraction(d(rng))};
    const bool oracle = partition_equal(r, s);
    const ClassicEquality e = classic_equality(r, s);
    EXPECT_EQ(e.three_class, oracle);
    EXPECT_EQ(e.two_class, oracle);
  }
}

TEST(Classic, EqualityDetectsTinyDifferencesBeyondMaxDen) {
  const ClassicRatio r{Fraction(1'000'001), Fraction(1'000'000)};
  const ClassicRatio s{Fraction(1'000'002), Fraction(1'000'001)};
  const ClassicEquality e = classic_equality(r, s, 10);
  EXPECT_FALSE(e.three_class);
  EXPECT_FALSE(e.two_class);
}

TEST(Classic, ComposeAndAdd) {
  const ClassicRatio c = classic_compose({Fraction(2), Fraction(3)}, {Fraction(5), Fraction(7)});
  EXPECT_EQ(c.value(), Fraction(10, 21));
  const ClassicRatio s = classic_add({Fraction(1), Fraction(2)}, {Fraction(1), Fraction(3)});
  EXPECT_EQ(s.value(), Fraction(5, 6));
}

TEST(Classic, ExAequaliAndCompositio) {
  EXPECT_EQ(ex_aequali_check(Fraction(2), Fraction(3), Fraction(5), Fraction(4), Fraction(20, 3), Fraction(10)),
            CheckOutcome::Holds);
  EXPECT_EQ(ex_aequali_check(Fraction(1), Fraction(2), Fraction(3), Fraction(1), Fraction(1), Fraction(1)),
            CheckOutcome::Vacuous);
  EXPECT_EQ(compositio_check(Fraction(1), Fraction(2), Fraction(3), Fraction(6)), CheckOutcome::Holds);
  EXPECT_EQ(compositio_check(Fraction(1), Fraction(2), Fraction(3), Fraction(5)), CheckOutcome::Vacuous);
}

TEST(ClassicProperty, CompositionIsCommutativeOnSegments) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::int64_t> d(1, 50);
  for (int i = 0; i < 200; ++i) {
    const ClassicRatio r{Fraction(d(rng), d(rng)), Fraction(d(rng), d(rng))};
    const ClassicRatio s{Fraction(d(rng), d(rng)), Fraction(d(rng), d(rng))};
    EXPECT_TRUE(classic_equal(classic_compose(r, s), classic_compose(s, r)));
    EXPECT_EQ(classic_add(r, s).value(), r.value() + s.value());
  }
}

// ---------------------------------------------------------------------------
// Iteration, partition and Archimedes on fractions

TEST(FractionAction, IterateAndPartition) {
  EXPECT_EQ(iterate(BigInt(12), Fraction(3, 4)), Fraction(9));
  EXPECT_EQ(partition(Fraction(9), BigInt(3)), Fraction(3));
  EXPECT_EQ(apply_fraction(Fraction(2, 3), Fraction(9)), Fraction(6));
  EXPECT_EQ(iterate(BigInt("1000000000000"), Fraction(1)), Fraction(BigInt("1000000000000"), BigInt(1)));
}

// ---------------------------------------------------------------------------
// Step figures

TEST(Quadrature, SquareAtOneThousandTwentyFour) {
  const auto q = quadrature<Fraction>([](const Fraction& x) { return x * x; }, 1024);
  EXPECT_LT(q.lower, Fraction(1, 3));
  EXPECT_GT(q.upper, Fraction(1, 3));
  EXPECT_EQ(q.width(), Fraction(1, 1024));
  EXPECT_LT(q.width(), Fraction(1, 512));
}

TEST(Quadrature, MatchesClosedFormSums) {
  // sum_{i<k} (i/k)^2 / k = (k-1)k(2k-1) / (6 k^3)
  for (std::int64_t k : {1, 2, 3, 10, 77}) {
    const auto q = quadrature<Fraction>([](const Fraction& x) { return x * x; }, k);
    EXPECT_EQ(q.lower, Fraction((k - 1) * k * (2 * k - 1), 6 * k * k * k));
    EXPECT_EQ(q.upper, Fraction(k * (k + 1) * (2 * k + 1), 6 * k * k * k));
  }
}

TEST(Quadrature, DecreasingAndNonMonotone) {
  const auto q = quadrature<Fraction>([](const Fraction& x) { return Fraction(1) - x; }, 4);
  EXPECT_EQ(q.lower, Fraction(3, 8));
  EXPECT_EQ(q.upper, Fraction(5, 8));
  EXPECT_THROW(quadrature(std::vector<Fraction>{Fraction(0), Fraction(1), Fraction(0)}), NotMonotone);
  EXPECT_THROW(quadrature(std::vector<Fraction>{Fraction(0)}), std::invalid_argument);
}

TEST(Quadrature, UltimateRatioGapEqualsBound) {
  for (std::int64_t k : {2, 16, 256}) {
    std::vector<Fraction> f;
    for (std::int64_t i = 0; i <= k; ++i) f.push_back(Fraction(i, k) * Fraction(i, k) * Fraction(i, k));
    const UltimateRatio<Fraction> u = ultimate_ratio(f);
    EXPECT_EQ(u.gap, u.bound);
  }
}

TEST(Quadrature, FiguresInOneRatio) {
  std::vector<Fraction> f, g;
  for (std::int64_t i = 0; i <= 8; ++i) {
    f.push_back(Fraction(i * i, 64));
    g.push_back(Fraction(3 * i * i, 128));
  }
  const FigureRatio<Fraction> r = figure_ratio(f, g);
  EXPECT_TRUE(r.columns_equal);
  EXPECT_EQ(r.rho, Fraction(3, 2));
  ASSERT_TRUE(r.lower_ratio.has_value());
  EXPECT_EQ(*r.lower_ratio, Fraction(3, 2));
  EXPECT_EQ(r.upper_ratio, Fraction(3, 2));
  const FigureRatio<Fraction> one = figure_ratio(std::vector<Fraction>{Fraction(0), Fraction(1)},
                                                 std::vector<Fraction>{Fraction(0), Fraction(2)});
  EXPECT_FALSE(one.lower_ratio.has_value());
  EXPECT_EQ(one.upper_ratio, Fraction(2));
}

// ---------------------------------------------------------------------------
// Conjunct dependence

TEST(Conjunct, NewtonAnchors) {
  const DimWord density = DimWord::parse("matter/vol", WordMode::symmetric);
  const DimWord volume = DimWord::parse("vol", WordMode::symmetric);
  EXPECT_EQ(conjunct({Fraction(2), density}, {Fraction(3), volume}).to_string(), "6 [matter]");
  EXPECT_EQ(conjunct({Fraction(2), density}, {Fraction(2), volume}).to_string(), "4 [matter]");
  const Quantity motion = conjunct({Fraction(2), DimWord::parse("len/time", WordMode::symmetric)},
                                   {Fraction(2), DimWord::parse("matter", WordMode::symmetric)});
  EXPECT_EQ(motion.to_string(), "4 [len*matter/time]");
}

TEST(Conjunct, WordsParseAndPrint) {
  EXPECT_EQ(DimWord::parse("1", WordMode::symmetric).to_string(), "1");
  EXPECT_EQ(DimWord::parse("vol/vol", WordMode::symmetric).degree(), 0);
  EXPECT_EQ(DimWord::parse("cm*s*cm", WordMode::free).to_string(), "cm*s*cm");
  EXPECT_EQ(DimWord::parse("cm*s*cm", WordMode::symmetric).to_string(), "cm*cm*s");
  EXPECT_THROW(DimWord::parse("cm/s", WordMode::free), std::invalid_argument);
  EXPECT_THROW(DimWord::parse("cm**s", WordMode::symmetric), std::invalid_argument);
}

TEST(Conjunct, DegreeCap) {
  DimWord w = DimWord::free_word({"a"});
  for (int i = 1; i < 8; ++i) w = concat(w, DimWord::free_word({"a"}));
  EXPECT_EQ(w.degree(), 8);
  EXPECT_THROW(concat(w, DimWord::free_word({"a"})), std::length_error);
  EXPECT_THROW(concat(w, DimWord::symmetric_word({{"a", 1}})), std::invalid_argument);
}

TEST(Conjunct, WordSpaceDimensionMatchesEnumeration) {
  for (int basis = 1; basis <= 4; ++basis)
    for (int degree = 0; degree <= 4; ++degree) {
      std::set<std::vector<int>> free_words, multisets;
      std::vector<int> w(static_cast<std::size_t>(degree), 0);
      std::int64_t total = 1;
      for (int i = 0; i < degree; ++i) total *= basis;
      for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < degree; ++i, c /= basis) w[static_cast<std::size_t>(i)] = static_cast<int>(c % basis);
        free_words.insert(w);
        std::vector<int> sorted = w;
        std::sort(sorted.begin(), sorted.end());
        multisets.insert(sorted);
      }
      EXPECT_EQ(word_space_dimension(basis, degree, WordMode::free), static_cast<std::int64_t>(free_words.size()));
      EXPECT_EQ(word_space_dimension(basis, degree, WordMode::symmetric), static_cast<std::int64_t>(multisets.size()));
    }
}

TEST(Conjunct, RectanglesAndOneDimensionalCollapse) {
  EXPECT_TRUE(rectangle_representation_check(Fraction(3), Fraction(2), Fraction(5), Fraction(7, 2)));
  for (int d = 1; d <= 8; ++d) EXPECT_TRUE(one_dim_collapse_check(d));
  EXPECT_THROW(one_dim_collapse_check(0), std::invalid_argument);
}

TEST(Conjunct, NoncommutativeWitness) {
  const NoncommutativeWitness w = noncommutative_witness();
  EXPECT_FALSE(w.free_equal);
  EXPECT_TRUE(w.symmetric_equal);
  EXPECT_GT(w.magnitude_gap, 0.1);
}

TEST(Conjunct, MixedMagnitudesPromote) {
  const DimWord len = DimWord::parse("len", WordMode::symmetric);
  const Quantity q = conjunct({Fraction(1, 2), len}, {0.5, len});
  EXPECT_DOUBLE_EQ(std::get<double>(q.magnitude), 0.25);
  const ConeSpace a = ConeSpace::orthant(2), b = ConeSpace::orthant(3);
  const Quantity ra{RatioMagnitude{a, Mat::Identity(2, 2), false}, len};
  const Quantity rb{RatioMagnitude{b, Mat::Identity(3, 3), false}, len};
  EXPECT_THROW(conjunct(ra, rb), IncompatibleHosts);
}

// ---------------------------------------------------------------------------
// Cone spec files

TEST(ConeSpecFile, ParsesBuiltins) {
  EXPECT_EQ(parse_cone_spec("kind = orthant\ndim = 3").dim(), 3);
  EXPECT_EQ(parse_cone_spec("kind = psd_real\nk = 2").dim(), 3);
  EXPECT_EQ(parse_cone_spec("kind = hermitian\nk = 2\n").dim(), 4);
  EXPECT_EQ(parse_cone_spec("# axis first\nkind = lorentz   # trailing\n\ndim = 4\n").dim(), 4);
}

TEST(ConeSpecFile, PolyhedralWedgeIsNotSelfDual) {
  const ConeSpace c = parse_cone_spec("kind = polyhedral\ndim = 2\ngen = 1,0\ngen = 1,1");
  EXPECT_EQ(c.kind(), ConeKind::polyhedral);
  EXPECT_FALSE(c.is_self_dual());
}

TEST(ConeSpecFile, DiagnosticsNameLineAndColumn) {
  auto err = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_cone_spec(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(err("kind = cube\ndim = 3"), std::make_pair(1, 8));
  EXPECT_EQ(err("kind = orthant\ndim = 0"), std::make_pair(2, 7));
  EXPECT_EQ(err("kind = orthant\ndim = x"), std::make_pair(2, 7));
  EXPECT_EQ(err("kind = polyhedral\ndim = 2\ngen = 1, z"), std::make_pair(3, 10));
  EXPECT_EQ(err("kind = polyhedral\ndim = 2\ngen = 0,0"), std::make_pair(3, 1));
  EXPECT_EQ(err("kind = polyhedral\ndim = 2\ngen = 1,0\ngen = 2,0"), std::make_pair(3, 1));
  EXPECT_EQ(err("kind = orthant\ncolour = red"), std::make_pair(2, 1));
  EXPECT_EQ(err("dim = 2"), std::make_pair(1, 1));
  EXPECT_EQ(err("kind = psd_real\ndim = 2"), std::make_pair(1, 1));
  EXPECT_EQ(err("kind orthant"), std::make_pair(1, 1));
}

TEST(ConeSpecFile, EmitterRoundTrips) {
  const std::vector<std::string> texts{
      "kind = orthant\ndim = 3\n", "kind = lorentz\ndim = 3\n", "kind = psd_real\nk = 2\n",
      "kind = hermitian\nk = 3\n", "kind = polyhedral\ndim = 3\ngen = 1,1,0\ngen = 1,0,1\ngen = 1,-1,0.5\n"};
  for (const std::string& t : texts) EXPECT_EQ(emit_cone_spec(parse_cone_spec_text(t)), t);
  const std::string commented = "# wedge\nkind = polyhedral # k\ndim = 2\ngen = 1, 0\ngen = 0.1,1\n";
  EXPECT_EQ(emit_cone_spec(parse_cone_spec_text(commented)), "kind = polyhedral\ndim = 2\ngen = 1,0\ngen = 0.1,1\n");
}

// ---------------------------------------------------------------------------
// Reports

TEST(Report, LinesAreSortedAndExitCodeIsWorstResult) {
  Report r("demo", 42);
  r.add({"zeta", Status::Unknown, "sampled"});
  r.add("alpha", true, "ok");
  EXPECT_EQ(r.exit_code(), 0);
  const auto lines = r.check_lines();
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "CHECK alpha PASS ok");
  EXPECT_EQ(lines[1], "CHECK zeta UNKNOWN sampled");
  r.add("mid", false, "multi\nline");
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_NE(r.str().find("# seed 42\n"), std::string::npos);
  EXPECT_NE(r.str().find("CHECK mid FAIL multi line"), std::string::npos);
}
