#pragma once

/**
 * @file ratio.hpp
 * @brief Ratios a':a of cone elements and their self-adjoint derivations.
 *
 * A ratio is built on the minimal decomposition a = sum alpha_i c_i of its
 * consequent. The antecedent must split face-wise as a' = sum beta_i c_i, and
 * lambda_i = beta_i / alpha_i is the multiplier on the i-th face, bracketed by
 * Farey neighbours through the cone-order cut
 *
 *     n * beta_i c_i < m * alpha_i c_i   in the ray order of c_i.
 *
 * The operator form is delta = sum lambda_i delta_{<c_i>}, the unique
 * self-adjoint derivation with delta a = a'.
 */

#include "eudoxus/cone_space.hpp"
#include "eudoxus/cut.hpp"
#include "eudoxus/derivation.hpp"
#include "eudoxus/face.hpp"
#include "eudoxus/fraction.hpp"
#include "eudoxus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eudoxus {

class NotComparable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::int64_t kDefaultMaxDen = 1'000'000;

struct RatioComponent {
  double alpha;  ///< coefficient of the atom in the consequent
  double beta;   ///< coefficient of the atom in the antecedent
  double lambda;
  Bracket bracket;
  Vec atom;
};

struct Ratio {
  ConeSpace host;
  Vec antecedent;
  Vec consequent;
  std::vector<RatioComponent> components;
  bool non_unique = false;    ///< repeated multiplier inside a degenerate block
  bool single_block = false;  ///< consequent could not be split into incomparable parts
  bool has_negative = false;  ///< some lambda < 0 (signed antecedent)
  std::int64_t max_den = kDefaultMaxDen;
};

/// Cut of lambda = beta / alpha in the ray order, with the host tolerance band.
inline CutOracle component_oracle(double alpha, double beta, double eps) {
  auto diff = [alpha, beta, eps](const BigInt& m, const BigInt& n) {
    const double md = m.convert_to<double>();
    const double nd = n.convert_to<double>();
    const double d = md * alpha - nd * beta;
    const double band = eps * (std::abs(md * alpha) + std::abs(nd * beta));
    return std::pair<double, double>{d, band};
  };
  return CutOracle{
      [diff](const BigInt& m, const BigInt& n) {
        auto [d, band] = diff(m, n);
        return d > band;
      },
      [diff](const BigInt& m, const BigInt& n) {
        auto [d, band] = diff(m, n);
        return std::abs(d) <= band;
      },
  };
}

inline CutOracle component_oracle(const RatioComponent& c, double eps) {
  return component_oracle(c.alpha, c.beta, eps);
}

/**
 * a':a for an order unit a. Throws NotAnOrderUnit when a is not interior and
 * NotComparable when a' is not diagonal over any incomparable decomposition of a.
 */
inline Ratio ratio_from_pair(const ConeSpace& space, const Vec& antecedent, const Vec& consequent,
                             std::int64_t max_den = kDefaultMaxDen) {
  require_dim(antecedent, space.dim(), "ratio_from_pair");
  require_dim(consequent, space.dim(), "ratio_from_pair");
  if (!space.is_order_unit(consequent)) throw NotAnOrderUnit("ratio_from_pair: consequent is not an order unit");
  if (!antecedent.allFinite()) throw std::invalid_argument("ratio_from_pair: antecedent is not finite");

  MinimalDecomposition md = minimal_decomposition(space, consequent, &antecedent, true);
  Ratio r{space, antecedent, consequent, {}, md.non_unique, md.single_block, false, max_den};
  Vec recon = Vec::Zero(space.dim());
  if (const PolyhedralCone* poly = space.polyhedron(); poly != nullptr && !md.single_block) {
    Mat e(space.dim(), static_cast<Eigen::Index>(md.components.size()));
    for (std::size_t i = 0; i < md.components.size(); ++i) e.col(static_cast<Eigen::Index>(i)) = md.components[i].atom;
    Vec beta = e.colPivHouseholderQr().solve(antecedent);
    for (std::size_t i = 0; i < md.components.size(); ++i) {
      const auto& c = md.components[i];
      r.components.push_back({c.lambda, beta(static_cast<Eigen::Index>(i)), 0.0, {}, c.atom});
    }
  } else {
    for (const auto& c : md.components) {
      const double beta = antecedent.dot(c.atom) / c.atom.squaredNorm();
      r.components.push_back({c.lambda, beta, 0.0, {}, c.atom});
    }
  }
  for (const auto& c : r.components) recon += c.beta * c.atom;
  const double scale = std::max({1.0, antecedent.norm(), consequent.norm()});
  if ((recon - antecedent).norm() > 1e-8 * scale)
    throw NotComparable("ratio_from_pair: antecedent is not diagonal over the decomposition of the consequent");

  for (auto& c : r.components) {
    c.lambda = c.beta / c.alpha;
    c.bracket = stern_brocot_bracket(component_oracle(c, space.eps()), max_den);
    if (c.lambda < 0) r.has_negative = true;
  }
  return r;
}

namespace detail {

inline bool same_bracket(const Bracket& x, const Bracket& y) {
  return x.exact == y.exact && x.lo == y.lo && x.hi == y.hi;
}

struct RatioGroup {
  Bracket bracket;
  RatioComponent representative;
  Mat projector;
};

inline std::vector<RatioGroup> group_components(const Ratio& r, std::int64_t max_den) {
  std::vector<RatioGroup> groups;
  std::vector<Vec> sums;
  for (const auto& c : r.components) {
    Bracket b = stern_brocot_bracket(component_oracle(c, r.host.eps()), max_den);
    bool placed = false;
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (same_bracket(groups[g].bracket, b)) {
        sums[g] += c.atom;
        placed = true;
      }
    if (!placed) {
      groups.push_back({b, c, {}});
      sums.push_back(c.atom);
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g].projector = face_of(r.host, sums[g]).projector;
  return groups;
}

/// Exact dyadic value of a double.
inline Fraction exact_fraction(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Fraction f(mant);
  BigInt p = 1;
  if (e >= 0) {
    p <<= e;
    return f * Fraction(p, BigInt(1));
  }
  p <<= -e;
  return f / Fraction(p, BigInt(1));
}

}  // namespace detail

struct EqualityVerdict {
  bool equal = false;           ///< three-class form: classes I, II, III agree
  bool two_class_equal = false; ///< form using only < and its negation
  bool variants_agree() const { return equal == two_class_equal; }
};

/**
 * Generalized Eudoxus-Euclid equality. Both ratios are grouped by multiplier;
 * they are comparable when the group projectors commute, and equal when every
 * overlapping pair of groups puts the decisive fractions into the same classes.
 * The decisive fractions are the Farey brackets of both multipliers at
 * max_den plus the exact midpoint of the two multipliers.
 */
inline EqualityVerdict ratio_equality(const Ratio& r, const Ratio& s, std::int64_t max_den = kDefaultMaxDen) {
  if (r.host.dim() != s.host.dim() || r.host.kind() != s.host.kind())
    throw NotComparable("ratio_equal: ratios live in different spaces");
  auto gr = detail::group_components(r, max_den);
  auto gs = detail::group_components(s, max_den);
  for (const auto& g : gr)
    for (const auto& h : gs)
      if (commutator(g.projector, h.projector).norm() > 1e-7)
        throw NotComparable("ratio_equal: decompositions do not match face by face");

  EqualityVerdict v{true, true};
  const double eps = r.host.eps();
  for (const auto& g : gr)
    for (const auto& h : gs) {
      if ((g.projector * h.projector).norm() <= 1e-7) continue;
      std::vector<Fraction> decisive{g.bracket.lo, g.bracket.hi, h.bracket.lo, h.bracket.hi};
      const double mid = 0.5 * (g.representative.lambda + h.representative.lambda);
      if (std::isfinite(mid)) decisive.push_back(detail::exact_fraction(mid));
      CutOracle og = component_oracle(g.representative, eps);
      CutOracle oh = component_oracle(h.representative, eps);
      for (const Fraction& q : decisive) {
        const FractionClass cg = classify_fraction(q, og);
        const FractionClass ch = classify_fraction(q, oh);
        if (cg != ch) v.equal = false;
        // from n a' < m a it follows n c' < m c; from n a' not< m a it follows n c' not< m c.
        const bool below_g = cg == FractionClass::III;
        const bool below_h = ch == FractionClass::III;
        if (below_g != below_h) v.two_class_equal = false;
      }
    }
  return v;
}

inline bool ratio_equal(const Ratio& r, const Ratio& s, std::int64_t max_den = kDefaultMaxDen) {
  return ratio_equality(r, s, max_den).equal;
}

/// delta = sum lambda_i delta_{<a_i>}; the host must be self-dual.
inline Derivation to_derivation(const Ratio& r) {
  const ConeSpace& space = r.host;
  if (!space.is_self_dual()) throw Unsupported("to_derivation: host cone " + space.name() + " is not self-dual");
  const Eigen::Index d = space.dim();
  Mat m = Mat::Zero(d, d);
  for (const auto& c : r.components) m += c.lambda * facial_derivative(space, face_of(space, c.atom)).mat;
  Derivation out = Derivation::of(0.5 * (m + m.transpose()));
  return out;
}

/**
 * The ratio of a self-adjoint derivation: a is the sum of the witnesses of the
 * non-zero spectral faces (zero faces are skipped) and a' = delta a.
 */
inline Ratio from_derivation(const ConeSpace& space, const Derivation& delta, std::int64_t max_den = kDefaultMaxDen) {
  SpectralFaceFamily fam = spectral_faces(space, delta);
  Vec a = Vec::Zero(space.dim());
  for (const auto& e : fam.entries)
    if (!e.face.is_zero()) a += e.face.witness;
  return ratio_from_pair(space, delta.mat * a, a, max_den);
}

struct ComposeResult {
  std::optional<Ratio> ratio;  ///< present when the operator product is a self-adjoint derivation
  Derivation derivation;       ///< the operator product, or the symmetrized product when jb_only
  bool jb_only = false;
};

inline void require_same_host(const Ratio& r, const Ratio& s, const char* what) {
  if (r.host.dim() != s.host.dim() || r.host.kind() != s.host.kind() || r.host.spec().param != s.host.spec().param)
    throw std::invalid_argument(std::string(what) + ": ratios live in different spaces");
}

/// 1/2 (delta sigma + sigma delta).
inline Derivation jordan_compose(const Ratio& r, const Ratio& s) {
  require_same_host(r, s, "jordan_compose");
  const Mat a = to_derivation(r).mat;
  const Mat b = to_derivation(s).mat;
  return Derivation::of(0.5 * (a * b + b * a));
}

inline ComposeResult compose(const Ratio& r, const Ratio& s) {
  require_same_host(r, s, "compose");
  const Mat a = to_derivation(r).mat;
  const Mat b = to_derivation(s).mat;
  Mat prod = a * b;
  const double scale = std::max(1.0, prod.norm());
  if ((prod - prod.transpose()).norm() <= 1e-9 * scale) {
    Mat sym = 0.5 * (prod + prod.transpose());
    if (is_derivation(r.host, sym).verified()) {
      Derivation d = Derivation::of(sym);
      return {from_derivation(r.host, d, std::max(r.max_den, s.max_den)), d, false};
    }
  }
  return {std::nullopt, jordan_compose(r, s), true};
}

/// Sum of derivations, rewrapped as a ratio.
inline Ratio add(const Ratio& r, const Ratio& s) {
  require_same_host(r, s, "add");
  Mat sum = to_derivation(r).mat + to_derivation(s).mat;
  return from_derivation(r.host, Derivation::of(0.5 * (sum + sum.transpose())), std::max(r.max_den, s.max_den));
}

// ---------------------------------------------------------------------------
// Iteration, partition and the Archimedes-Eudoxus postulate.

namespace detail {

inline Fraction divide(const Fraction& a, const BigInt& n) { return a / Fraction(n, BigInt(1)); }
inline double divide(double a, const BigInt& n) { return a / n.convert_to<double>(); }
inline Vec divide(const Vec& a, const BigInt& n) { return a / n.convert_to<double>(); }

template <typename T>
T zero_like(const T& a) {
  if constexpr (std::is_same_v<T, Vec>)
    return Vec::Zero(a.size());
  else
    return T(0);
}

}  // namespace detail

/// n a by repeated doubling: (n+1)a = na + a.
template <typename T>
T iterate(const BigInt& n, const T& a) {
  if (n < 1) throw std::invalid_argument("iterate: n must be >= 1");
  T acc = detail::zero_like(a);
  T pow = a;
  BigInt k = n;
  while (k > 0) {
    if ((k & 1) != 0) acc = acc + pow;
    pow = pow + pow;
    k >>= 1;
  }
  return acc;
}

template <typename T>
T iterate(std::int64_t n, const T& a) {
  return iterate(BigInt(n), a);
}

/// The x with n x = a.
template <typename T>
T partition(const T& a, const BigInt& n) {
  if (n < 1) throw std::invalid_argument("partition: n must be >= 1");
  return detail::divide(a, n);
}

template <typename T>
T partition(const T& a, std::int64_t n) {
  return partition(a, BigInt(n));
}

/// (m/n) a = m (a / n); equal fractions act identically since they are reduced first.
template <typename T>
T apply_fraction(const Fraction& q, const T& a) {
  if (!q.is_positive()) throw std::invalid_argument("apply_fraction: fraction must be positive");
  return iterate(q.num(), partition(a, q.den()));
}

struct ArchimedesResult {
  bool holds = false;
  std::int64_t n = 0;  ///< least n with n a > b
};

/// Is there n <= N with n a > b in the strict cone order?
inline ArchimedesResult archimedes_check(const ConeSpace& space, const Vec& a, const Vec& b, std::int64_t big_n) {
  if (big_n < 1) throw std::invalid_argument("archimedes_check: N must be >= 1");
  if (!space.contains(a) || !space.contains(b)) throw NotInCone("archimedes_check: inputs must lie in the cone");
  auto ok = [&](std::int64_t n) { return space.lt(b, static_cast<double>(n) * a); };
  if (!ok(big_n)) return {};
  std::int64_t lo = 0, hi = big_n;  // ok(hi) holds, ok(lo) fails or lo = 0
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {true, hi};
}

// ---------------------------------------------------------------------------
// Multipliers of non-minimal decompositions and spectral sum operators.

/// inf{ m/n : n a' < m a } for a part a of an order unit, by bisection on t a - a' in K.
inline double face_lambda(const ConeSpace& space, const Vec& part, const Vec& part_prime) {
  auto ok = [&](double t) { return space.margin(t * part - part_prime) >= -1e-14 * std::max(1.0, part_prime.norm()); };
  double hi = 1.0;
  int guard = 0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (++guard > 200) throw NotComparable("face_lambda: the part does not measure its antecedent");
  }
  double lo = -1.0;
  guard = 0;
  while (ok(lo)) {
    lo *= 2.0;
    if (++guard > 200) return -std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/**
 * Spectral sum operator sum_i lambda_i (P(lambda_i) - P(lambda_{i-1})) of a
 * decomposition of the consequent into incomparable parts. Each part of the
 * antecedent is the projection of a' onto the span of the part's face.
 */
inline Mat spectral_sum_operator(const ConeSpace& space, const std::vector<Vec>& parts, const Vec& antecedent) {
  const Eigen::Index d = space.dim();
  struct Item {
    double lambda;
    Vec part;
  };
  std::vector<Item> items;
  for (const Vec& p : parts) {
    Face f = face_of(space, p);
    items.push_back({face_lambda(space, p, f.projector * antecedent), p});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.lambda < y.lambda; });
  Mat out = Mat::Zero(d, d);
  Mat prev = Mat::Zero(d, d);
  Vec running = Vec::Zero(d);
  for (const Item& it : items) {
    running += it.part;
    Mat cur = face_of(space, running).projector;
    out += it.lambda * (cur - prev);
    prev = cur;
  }
  return out;
}

}  // namespace eudoxus
