#pragma once

/**
 * @file acceptance.hpp
 * @brief The acceptance battery: ten end-to-end checks with pinned tolerances
 *        and time limits, shared by the CLI `suite all` and the test suite.
 */

#include "eudoxus/classic.hpp"
#include "eudoxus/conjunct.hpp"
#include "eudoxus/cut.hpp"
#include "eudoxus/krein.hpp"
#include "eudoxus/quadrature.hpp"
#include "eudoxus/ratio.hpp"
#include "eudoxus/report.hpp"
#include "eudoxus/spectral.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace eudoxus::acceptance {

struct Settings {
  std::uint64_t seed = 20240601;
  int samples = 500;
  std::int64_t max_den = kDefaultMaxDen;
};

namespace detail {

using Clock = std::chrono::steady_clock;

/// Runs body, and fails the check when it exceeds the time limit.
inline Check timed(const std::string& name, double limit_s, const std::function<Check()>& body) {
  const auto t0 = Clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c = {name, Status::Fail, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  c.name = name;
  std::ostringstream os;
  os.precision(3);
  os << " (" << std::fixed << dt << " s, limit " << limit_s << " s)";
  if (dt > limit_s && c.status == Status::Pass) {
    c.status = Status::Fail;
    c.detail = "time limit exceeded; " + c.detail;
  }
  c.detail += os.str();
  return c;
}

inline std::vector<ConeSpace> canonical_cones() {
  return {ConeSpace::orthant(3), ConeSpace::lorentz(3), ConeSpace::psd_real(2), ConeSpace::hermitian(2)};
}

inline Derivation random_selfadjoint(const std::vector<Derivation>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m = Mat::Zero(basis.front().mat.rows(), basis.front().mat.cols());
  for (const Derivation& b : basis) m += g(rng) * b.mat;
  return Derivation::of(0.5 * (m + m.transpose()));
}

/// A random order unit and an antecedent diagonal over its frame.
inline std::pair<Vec, Vec> random_pair(const ConeSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  std::uniform_real_distribution<double> sig(-2.0, 3.0);
  std::vector<Vec> frame = space.jordan()->random_frame(rng);
  Vec a = Vec::Zero(space.dim()), a1 = Vec::Zero(space.dim());
  for (const Vec& c : frame) {
    a += pos(rng) * c;
    a1 += sig(rng) * c;
  }
  return {a1, a};
}

inline Fraction random_fraction(std::mt19937_64& rng, std::int64_t num_max = 60, std::int64_t den_max = 40) {
  std::uniform_int_distribution<std::int64_t> n(1, num_max), d(1, den_max);
  return Fraction(n(rng), d(rng));
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

/// Newton's Definitions I and II: 2 x 2 = 4, 2 x 3 = 6, 2 x 2 = 4, exactly.
inline Check conjunct_anchors(const Settings&) {
  return detail::timed("ac01_conjunct_anchors", 1.0, [] {
    const DimWord density = DimWord::parse("matter/vol", WordMode::symmetric);
    const DimWord volume = DimWord::parse("vol", WordMode::symmetric);
    const DimWord velocity = DimWord::parse("len/time", WordMode::symmetric);
    const DimWord matter = DimWord::parse("matter", WordMode::symmetric);
    const Quantity q1 = conjunct({Fraction(2), density}, {Fraction(2), volume});
    const Quantity q2 = conjunct({Fraction(2), density}, {Fraction(3), volume});
    const Quantity q3 = conjunct({Fraction(2), velocity}, {Fraction(2), matter});
    const bool ok = std::get<Fraction>(q1.magnitude) == Fraction(4) && q1.word == matter &&
                    std::get<Fraction>(q2.magnitude) == Fraction(6) && q2.word == matter &&
                    std::get<Fraction>(q3.magnitude) == Fraction(4);
    return Check{"", ok ? Status::Pass : Status::Fail,
                 q1.to_string() + "; " + q2.to_string() + "; " + q3.to_string()};
  });
}

/// to_derivation(from_derivation(delta)) = delta and from_derivation(to_derivation(r)) = r.
inline Check ratio_derivation_round_trip(const Settings& s) {
  return detail::timed("ac02_ratio_derivation_round_trip", 30.0, [&] {
    std::mt19937_64 rng(s.seed);
    double worst = 0.0;
    int unequal = 0, total = 0;
    for (const ConeSpace& space : detail::canonical_cones()) {
      const auto basis = selfadjoint_derivations(space);
      for (int i = 0; i < 200; ++i) {
        Derivation d = detail::random_selfadjoint(basis, rng);
        Derivation back = to_derivation(from_derivation(space, d, s.max_den));
        worst = std::max(worst, operator_norm(back.mat - d.mat));
      }
      for (int i = 0; i < 200; ++i) {
        auto [a1, a] = detail::random_pair(space, rng);
        Ratio r = ratio_from_pair(space, a1, a, s.max_den);
        Ratio back = from_derivation(space, to_derivation(r), s.max_den);
        ++total;
        if (!ratio_equal(back, r, s.max_den)) ++unequal;
      }
    }
    const bool ok = worst < 1e-9 && unequal == 0;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 "max |delta' - delta| = " + detail::fmt(worst) + " (tol 1e-9); unequal ratios " +
                     std::to_string(unequal) + "/" + std::to_string(total)};
  });
}

/// reconstruct_from_faces(spectral_faces(delta)) = delta, including a zero spectral face.
inline Check facial_spectral_reconstruction(const Settings& s) {
  return detail::timed("ac03_facial_spectral_reconstruction", 10.0, [&] {
    std::mt19937_64 rng(s.seed + 1);
    double worst = 0.0;
    for (const ConeSpace& space : detail::canonical_cones()) {
      const auto basis = selfadjoint_derivations(space);
      for (int i = 0; i < 200; ++i) {
        Derivation d = detail::random_selfadjoint(basis, rng);
        Derivation back = reconstruct_from_faces(space, spectral_faces(space, d));
        worst = std::max(worst, operator_norm(back.mat - d.mat));
      }
    }
    // X -> L X + X L with L = diag(0, 1): spectrum {0, 1, 2}, zero face at 1.
    const ConeSpace psd = ConeSpace::psd_real(2);
    Mat l = Mat::Zero(2, 2);
    l(1, 1) = 1.0;
    Derivation d = Derivation::of(matrix_of(3, [&](const Vec& e) {
      Mat x = smat(e, 2);
      return svec(l * x + x * l);
    }));
    SpectralFaceFamily fam = spectral_faces(psd, d);
    const bool shape = fam.entries.size() == 3 && fam.entries[1].face.is_zero() &&
                       fam.entries[0].face.dimension() == 1 && fam.entries[2].face.dimension() == 1 &&
                       std::abs(fam.entries[1].lambda - 1.0) < 1e-12;
    const double zero_case = operator_norm(reconstruct_from_faces(psd, fam).mat - d.mat);
    worst = std::max(worst, zero_case);
    const bool ok = worst < 1e-9 && shape;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 "max reconstruction error " + detail::fmt(worst) + " (tol 1e-9); diag(0,1) zero face " +
                     (shape ? "present" : "MISSING")};
  });
}

/// x = x+ - x-, both in the cone, orthogonal; lorentz (0,1,0) in closed form.
inline Check jordan_moreau(const Settings& s) {
  return detail::timed("ac04_jordan_moreau_decomposition", 5.0, [&] {
    std::mt19937_64 rng(s.seed + 2);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<ConeSpace> cones = detail::canonical_cones();
    cones.push_back(ConeSpace::polyhedral({(Vec(2) << 1, 1).finished(), (Vec(2) << 1, -1).finished()}, 2));
    int bad = 0;
    double worst_orth = 0.0;
    for (const ConeSpace& space : cones) {
      for (int i = 0; i < 1000; ++i) {
        Vec x(space.dim());
        for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = g(rng);
        JordanParts p = space.jordan_decompose(x);
        const double n2 = x.squaredNorm();
        const double orth = std::abs(p.plus.dot(p.minus)) / n2;
        worst_orth = std::max(worst_orth, orth);
        if ((p.plus - p.minus - x).norm() > 1e-9 * x.norm() || !space.contains(p.plus) || !space.contains(p.minus) ||
            orth >= 1e-9)
          ++bad;
      }
    }
    const ConeSpace lor = ConeSpace::lorentz(3);
    JordanParts p = lor.jordan_decompose(Vec::Unit(3, 1));
    const Vec want_plus = (Vec(3) << 0.5, 0.5, 0.0).finished();
    const Vec want_minus = (Vec(3) << 0.5, -0.5, 0.0).finished();
    const double closed = std::max((p.plus - want_plus).cwiseAbs().maxCoeff(), (p.minus - want_minus).cwiseAbs().maxCoeff());
    const bool ok = bad == 0 && closed <= 1e-12;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 std::to_string(bad) + " failures in " + std::to_string(1000 * cones.size()) +
                     " decompositions; max |<x+,x->|/|x|^2 = " + detail::fmt(worst_orth) +
                     "; lorentz (0,1,0) error " + detail::fmt(closed)};
  });
}

/// Der and self-adjoint dimensions, cross-checked against the tangency-system oracle.
inline Check derivation_dimensions(const Settings& s) {
  return detail::timed("ac05_derivation_algebra_dimensions", 10.0, [&] {
    struct Want {
      ConeSpace space;
      int der;
      int sa;
    };
    std::vector<Want> wants{{ConeSpace::orthant(3), 3, 3},
                            {ConeSpace::psd_real(2), 4, 3},
                            {ConeSpace::lorentz(3), 4, 3},
                            {ConeSpace::hermitian(2), 7, 4}};
    bool ok = true;
    std::ostringstream os;
    for (const Want& w : wants) {
      std::vector<Mat> der;
      for (const Derivation& d : derivation_basis(w.space)) der.push_back(d.mat);
      const auto sa = symmetric_part(der);
      const auto oracle = tangency_derivation_basis(w.space, s.seed);
      const auto oracle_sa = symmetric_part(oracle);
      double cross = 0.0;
      for (const Mat& m : der) cross = std::max(cross, span_residual(oracle, m) / std::max(1.0, m.norm()));
      for (const Mat& m : oracle) cross = std::max(cross, span_residual(der, m) / std::max(1.0, m.norm()));
      const bool good = static_cast<int>(der.size()) == w.der && static_cast<int>(sa.size()) == w.sa &&
                        oracle.size() == der.size() && oracle_sa.size() == sa.size() && cross < 1e-8;
      ok = ok && good;
      os << w.space.name() << " der " << der.size() << "/" << oracle.size() << " sa " << sa.size() << "/"
         << oracle_sa.size() << "; ";
    }
    os << "(basis/oracle)";
    return Check{"", ok ? Status::Pass : Status::Fail, os.str()};
  });
}

/// Riesz and commutative on the orthant; non-Riesz with witnesses and a noncommuting pair elsewhere.
inline Check commutativity_dichotomy(const Settings& s) {
  return detail::timed("ac06_commutativity_dichotomy", 10.0, [&] {
    std::mt19937_64 rng(s.seed + 3);
    std::ostringstream os;
    bool ok = true;
    const ConeSpace orth = ConeSpace::orthant(3);
    const bool orth_riesz = is_riesz(orth).riesz;
    double orth_comm = 0.0;
    for (int i = 0; i < 50; ++i) {
      auto [a1, a] = detail::random_pair(orth, rng);
      auto [b1, b] = detail::random_pair(orth, rng);
      Ratio r = ratio_from_pair(orth, a1, a, s.max_den), t = ratio_from_pair(orth, b1, b, s.max_den);
      ComposeResult rt = compose(r, t), tr = compose(t, r);
      if (rt.jb_only || tr.jb_only) ok = false;
      orth_comm = std::max(orth_comm, (rt.derivation.mat - tr.derivation.mat).norm());
    }
    ok = ok && orth_riesz && orth_comm < 1e-12;
    os << "orthant riesz=" << orth_riesz << " commutator " << orth_comm << "; ";

    auto noncommuting = [&](const ConeSpace& space, const Vec& x, const Vec& y) {
      Ratio r = ratio_from_pair(space, x, space.unit(), s.max_den);
      Ratio t = ratio_from_pair(space, y, space.unit(), s.max_den);
      ComposeResult rt = compose(r, t);
      const Mat dr = to_derivation(r).mat, dt = to_derivation(t).mat;
      return std::pair<bool, double>{rt.jb_only, commutator(dr, dt).norm()};
    };
    {
      const ConeSpace psd = ConeSpace::psd_real(2);
      RieszReport rr = is_riesz(psd);
      Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
      a(0, 0) = 1.0;
      b(0, 1) = b(1, 0) = 1.0;
      auto [jb, gap] = noncommuting(psd, svec(a), svec(b));
      OrientabilityReport o = orientability(psd);
      const bool good = !rr.riesz && rr.x.size() == 3 && jb && gap > 1e-3 &&
                        o.outcome == Orientation::NotOrientable && o.reason == "odd dimension 3";
      ok = ok && good;
      os << "psd_real(2) riesz=" << rr.riesz << " commutator " << gap << " " << to_string(o.outcome) << "(" << o.reason
         << "); ";
    }
    {
      const ConeSpace lor = ConeSpace::lorentz(3);
      RieszReport rr = is_riesz(lor);
      Vec x = Vec::Zero(3), y = Vec::Zero(3);
      x(0) = 1.0, x(1) = 0.5;
      y(0) = 1.0, y(2) = 0.5;
      auto [jb, gap] = noncommuting(lor, x, y);
      const bool good = !rr.riesz && rr.x.size() == 3 && jb && gap > 1e-3;
      ok = ok && good;
      os << "lorentz(3) riesz=" << rr.riesz << " commutator " << gap << "; ";
    }
    {
      OrientabilityReport oo = orientability(orth);
      OrientabilityReport oh = orientability(ConeSpace::hermitian(2));
      const bool good = oo.outcome == Orientation::Orientable && oh.outcome == Orientation::Orientable;
      ok = ok && good;
      os << "orthant " << to_string(oo.outcome) << "; hermitian(2) " << to_string(oh.outcome) << " (quotient "
         << oh.quotient_dim << ")";
    }
    return Check{"", ok ? Status::Pass : Status::Fail, os.str()};
  });
}

/// sqrt 2 bracket, equality variants, ex aequali and compositio in exact arithmetic.
inline Check eudoxus_kernel(const Settings& s) {
  return detail::timed("ac07_eudoxus_kernel", 10.0, [&] {
    std::mt19937_64 rng(s.seed + 4);
    CutOracle sqrt2{[](const BigInt& m, const BigInt& n) { return m > 0 && m * m > 2 * n * n; },
                    [](const BigInt& m, const BigInt& n) { return m * m == 2 * n * n; }};
    Bracket b = stern_brocot_bracket(sqrt2, BigInt(1'000'000));
    const bool contains = b.lo * b.lo < Fraction(2) && Fraction(2) < b.hi * b.hi;
    const double width = b.width();
    int disagree = 0;
    for (int i = 0; i < 1000; ++i) {
      ClassicRatio r{detail::random_fraction(rng), detail::random_fraction(rng)};
      ClassicRatio t = (i % 2 == 0) ? ClassicRatio{r.antecedent * Fraction(i % 7 + 1, 3), r.consequent * Fraction(i % 7 + 1, 3)}
                                    : ClassicRatio{detail::random_fraction(rng), detail::random_fraction(rng)};
      ClassicEquality e = classic_equality(r, t);
      if (e.three_class != e.two_class) ++disagree;
    }
    int ex_fail = 0, comp_fail = 0;
    for (int i = 0; i < 200; ++i) {
      const Fraction a = detail::random_fraction(rng), bb = detail::random_fraction(rng), c = detail::random_fraction(rng);
      const Fraction a1 = detail::random_fraction(rng);
      const Fraction b1 = a1 * c / bb;  // b:c = a':b'
      const Fraction c1 = b1 * bb / a;  // a:b = b':c'
      if (ex_aequali_check(a, bb, c, a1, b1, c1) != CheckOutcome::Holds) ++ex_fail;
      const Fraction x = detail::random_fraction(rng), y = detail::random_fraction(rng), z = detail::random_fraction(rng);
      if (compositio_check(x, y, x * z / y, z) != CheckOutcome::Holds) ++comp_fail;
    }
    const bool ok = contains && width < 1e-11 && disagree == 0 && ex_fail == 0 && comp_fail == 0;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 "sqrt2 in [" + b.lo.to_string() + ", " + b.hi.to_string() + "] width " + detail::fmt(width) +
                     " (tol 1e-11); variant disagreements " + std::to_string(disagree) +
                     "/1000; ex aequali failures " + std::to_string(ex_fail) + "/200; compositio failures " +
                     std::to_string(comp_fail) + "/200"};
  });
}

/// Step figures for x^2 with k = 1024, and two figures in ratio 1:2.
inline Check quadrature_demos(const Settings&) {
  return detail::timed("ac08_quadrature_demos", 1.0, [] {
    const std::int64_t k = 1024;
    auto sq = [](const Fraction& x) { return x * x; };
    std::vector<Fraction> f, g;
    for (std::int64_t i = 0; i <= k; ++i) {
      const Fraction x(i, k);
      f.push_back(sq(x));
      g.push_back(Fraction(2) * sq(x));
    }
    UltimateRatio<Fraction> u = ultimate_ratio(f);
    const Fraction third(1, 3);
    const Fraction width = u.q.width();
    const bool brackets = u.q.lower < third && third < u.q.upper;
    const bool narrow = width < Fraction(1, 512);
    const bool bound = u.gap == u.bound;
    FigureRatio<Fraction> fr = figure_ratio(f, g);
    const bool lemma4 = fr.columns_equal && fr.rho == Fraction(2) && fr.lower_ratio && *fr.lower_ratio == Fraction(2) &&
                        fr.upper_ratio == Fraction(2);
    const bool ok = brackets && narrow && bound && lemma4;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 "upper - lower = " + width.to_string() + " (< 1/512 " + (narrow ? "yes" : "no") +
                     "); upper/lower - 1 = " + detail::fmt(u.gap.to_double()) + " = (f(1)-f(0))/(k lower) " +
                     (bound ? "exactly" : "NO") + "; figure ratio " + fr.upper_ratio.to_string()};
  });
}

/// Pure states, multiplicativity and the isometric Gelfand map on orthant(1..5).
inline Check krein_reconstruction(const Settings& s) {
  return detail::timed("ac09_krein_reconstruction", 5.0, [&] {
    std::mt19937_64 rng(s.seed + 5);
    std::normal_distribution<double> g(0.0, 1.0);
    bool ok = true;
    std::ostringstream os;
    double worst_iso = 0.0;
    for (int n = 1; n <= 5; ++n) {
      KreinSpace e(ConeSpace::orthant(n));
      PureStates ps = pure_states(e);
      if (static_cast<int>(ps.states.size()) != n || !ps.exact) ok = false;
      for (const State& f : ps.states)
        if (!multiplicative_characterization(e, f, 0.0).holds) ok = false;
      for (std::size_t i = 0; i < ps.states.size(); ++i)
        for (std::size_t j = i + 1; j < ps.states.size(); ++j) {
          State mid{0.5 * (ps.states[i].functional + ps.states[j].functional)};
          MultiplicativeResult m = multiplicative_characterization(e, mid);
          if (m.holds || m.x.size() == 0) ok = false;
        }
      for (int t = 0; t < s.samples; ++t) {
        Vec x(n);
        for (int j = 0; j < n; ++j) x(j) = g(rng);
        const double sup = gelfand_map(e, x).cwiseAbs().maxCoeff();
        worst_iso = std::max(worst_iso, std::abs(sup - e.norm(x)) / std::max(1.0, x.norm()));
      }
      os << "n=" << n << ": " << ps.states.size() << " pure states; ";
    }
    ok = ok && worst_iso < 1e-9;
    os << "isometry error " << worst_iso << " (tol 1e-9)";
    return Check{"", ok ? Status::Pass : Status::Fail, os.str()};
  });
}

/// Spectral sum operators decrease along random refinement chains on orthant(6).
inline Check refinement_monotonicity(const Settings& s) {
  return detail::timed("ac10_refinement_monotonicity", 5.0, [&] {
    std::mt19937_64 rng(s.seed + 6);
    std::uniform_real_distribution<double> pos(0.2, 3.0);
    const ConeSpace space = ConeSpace::orthant(6);
    int violations = 0, steps = 0;
    double worst = 0.0;
    for (int chain = 0; chain < 100; ++chain) {
      Vec a(6), a1(6);
      for (int i = 0; i < 6; ++i) a(i) = pos(rng), a1(i) = pos(rng);
      std::vector<std::vector<int>> blocks{{0, 1, 2, 3, 4, 5}};
      auto parts_of = [&] {
        std::vector<Vec> parts;
        for (const auto& blk : blocks) {
          Vec p = Vec::Zero(6);
          for (int i : blk) p(i) = a(i);
          parts.push_back(p);
        }
        return parts;
      };
      Mat prev = spectral_sum_operator(space, parts_of(), a1);
      while (blocks.size() < 6) {
        std::vector<std::size_t> splittable;
        for (std::size_t b = 0; b < blocks.size(); ++b)
          if (blocks[b].size() > 1) splittable.push_back(b);
        const std::size_t pick = splittable[std::uniform_int_distribution<std::size_t>(0, splittable.size() - 1)(rng)];
        std::vector<int> blk = blocks[pick];
        std::shuffle(blk.begin(), blk.end(), rng);
        const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, blk.size() - 1)(rng);
        blocks[pick] = std::vector<int>(blk.begin(), blk.begin() + static_cast<std::ptrdiff_t>(cut));
        blocks.emplace_back(blk.begin() + static_cast<std::ptrdiff_t>(cut), blk.end());
        Mat next = spectral_sum_operator(space, parts_of(), a1);
        Eigen::SelfAdjointEigenSolver<Mat> es(prev - next, Eigen::EigenvaluesOnly);
        const double m = es.eigenvalues()(0);
        worst = std::min(worst, m);
        ++steps;
        if (m < -1e-9) ++violations;
        prev = next;
      }
    }
    const bool ok = violations == 0;
    return Check{"", ok ? Status::Pass : Status::Fail,
                 std::to_string(violations) + " violations in " + std::to_string(steps) +
                     " refinement steps; min eigenvalue of the decrease " + detail::fmt(worst) + " (tol -1e-9)"};
  });
}

inline std::vector<Check> run_all(const Settings& s) {
  return {conjunct_anchors(s),     ratio_derivation_round_trip(s), facial_spectral_reconstruction(s),
          jordan_moreau(s),        derivation_dimensions(s),       commutativity_dichotomy(s),
          eudoxus_kernel(s),       quadrature_demos(s),            krein_reconstruction(s),
          refinement_monotonicity(s)};
}

}  // namespace eudoxus::acceptance
