#pragma once

/**
 * @file conjunct.hpp
 * @brief Dimensioned quantities multiplied "conjunctly": words in a tensor
 *        algebra over dimension symbols, magnitudes multiplied as ratios.
 *
 * Free words keep symbol order (cm*s differs from s*cm); symmetric words are
 * exponent vectors and commute. Symbols are opaque labels.
 */

#include "eudoxus/classic.hpp"
#include "eudoxus/cone_space.hpp"
#include "eudoxus/fraction.hpp"
#include "eudoxus/ratio.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eudoxus {

enum class WordMode { free, symmetric };

class DimWord {
 public:
  static constexpr int kDefaultDegreeCap = 8;

  DimWord() = default;

  static DimWord free_word(std::vector<std::string> symbols) {
    DimWord w;
    w.mode_ = WordMode::free;
    w.symbols_ = std::move(symbols);
    return w;
  }

  static DimWord symmetric_word(std::map<std::string, int> exponents) {
    DimWord w;
    w.mode_ = WordMode::symmetric;
    for (auto& [s, e] : exponents)
      if (e != 0) w.exponents_[s] = e;
    return w;
  }

  /// "matter/vol", "len*matter/time", "cm*s", "1" (dimensionless).
  static DimWord parse(std::string_view text, WordMode mode) {
    auto split = [](std::string_view part) {
      std::vector<std::string> out;
      std::size_t start = 0;
      while (start <= part.size()) {
        std::size_t end = part.find('*', start);
        if (end == std::string_view::npos) end = part.size();
        std::string sym(part.substr(start, end - start));
        if (sym.empty()) throw std::invalid_argument("DimWord::parse: empty symbol");
        if (sym != "1") out.push_back(sym);
        start = end + 1;
      }
      return out;
    };
    const std::size_t slash = text.find('/');
    std::vector<std::string> num = split(text.substr(0, slash));
    std::vector<std::string> den;
    if (slash != std::string_view::npos) den = split(text.substr(slash + 1));
    if (mode == WordMode::free) {
      if (!den.empty()) throw std::invalid_argument("DimWord::parse: free words have no inverses");
      return free_word(num);
    }
    std::map<std::string, int> e;
    for (const auto& s : num) ++e[s];
    for (const auto& s : den) --e[s];
    return symmetric_word(e);
  }

  WordMode mode() const { return mode_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::map<std::string, int>& exponents() const { return exponents_; }

  int degree() const {
    if (mode_ == WordMode::free) return static_cast<int>(symbols_.size());
    int d = 0;
    for (const auto& [s, e] : exponents_) d += std::abs(e);
    return d;
  }

  std::string to_string() const {
    std::vector<std::string> num, den;
    if (mode_ == WordMode::free) {
      num = symbols_;
    } else {
      for (const auto& [s, e] : exponents_)
        for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : den).push_back(s);
    }
    auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "*" : "") + v[i];
      return out;
    };
    std::string out = num.empty() ? "1" : join(num);
    if (!den.empty()) out += "/" + join(den);
    return out;
  }

  friend bool operator==(const DimWord& a, const DimWord& b) {
    return a.mode_ == b.mode_ && a.symbols_ == b.symbols_ && a.exponents_ == b.exponents_;
  }

  /// Concatenation (free) or exponent sum (symmetric).
  friend DimWord concat(const DimWord& a, const DimWord& b, int degree_cap = kDefaultDegreeCap) {
    if (a.mode_ != b.mode_) throw std::invalid_argument("concat: words of different modes");
    DimWord out;
    if (a.mode_ == WordMode::free) {
      std::vector<std::string> s = a.symbols_;
      s.insert(s.end(), b.symbols_.begin(), b.symbols_.end());
      out = free_word(std::move(s));
    } else {
      std::map<std::string, int> e = a.exponents_;
      for (const auto& [s, k] : b.exponents_) e[s] += k;
      out = symmetric_word(std::move(e));
    }
    if (out.degree() > degree_cap)
      throw std::length_error("concat: word degree " + std::to_string(out.degree()) + " exceeds the cap " +
                              std::to_string(degree_cap));
    return out;
  }

 private:
  WordMode mode_ = WordMode::symmetric;
  std::vector<std::string> symbols_;
  std::map<std::string, int> exponents_;
};

/// Number of basis words of a given degree over `basis` symbols.
inline std::int64_t word_space_dimension(int basis, int degree, WordMode mode) {
  if (mode == WordMode::free) {
    std::int64_t n = 1;
    for (int i = 0; i < degree; ++i) n *= basis;
    return n;
  }
  // multisets of size degree from basis symbols: C(basis + degree - 1, degree)
  std::int64_t n = 1;
  for (int i = 1; i <= degree; ++i) n = n * (basis + i - 1) / i;
  return n;
}

/// Operator magnitude: the derivation of a ratio over a host cone.
struct RatioMagnitude {
  ConeSpace host;
  Mat op;
  bool ordered = false;  ///< product of non-commuting factors, taken in word order
};

using Magnitude = std::variant<double, Fraction, RatioMagnitude>;

class IncompatibleHosts : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Quantity {
  Magnitude magnitude;
  DimWord word;

  std::string to_string() const {
    std::ostringstream os;
    if (const auto* d = std::get_if<double>(&magnitude)) {
      os << *d;
    } else if (const auto* f = std::get_if<Fraction>(&magnitude)) {
      os << f->to_string();
    } else {
      const auto& r = std::get<RatioMagnitude>(magnitude);
      os << "ratio on " << r.host.name();
    }
    os << " [" << word.to_string() << "]";
    return os.str();
  }
};

namespace detail {

inline double as_double(const Magnitude& m) {
  if (const auto* d = std::get_if<double>(&m)) return *d;
  return std::get<Fraction>(m).to_double();
}

inline bool same_host(const ConeSpace& a, const ConeSpace& b) {
  return a.kind() == b.kind() && a.dim() == b.dim() && a.spec().param == b.spec().param;
}

}  // namespace detail

/**
 * Magnitudes multiply as ratios: exact fractions stay exact, mixed scalars are
 * promoted to double, operator magnitudes compose (word order in free mode,
 * symmetrized in symmetric mode when the factors do not commute).
 */
inline Quantity conjunct(const Quantity& q1, const Quantity& q2, int degree_cap = DimWord::kDefaultDegreeCap) {
  DimWord word = concat(q1.word, q2.word, degree_cap);
  const auto* r1 = std::get_if<RatioMagnitude>(&q1.magnitude);
  const auto* r2 = std::get_if<RatioMagnitude>(&q2.magnitude);
  if (r1 != nullptr && r2 != nullptr) {
    if (!detail::same_host(r1->host, r2->host)) throw IncompatibleHosts("conjunct: ratio magnitudes on different cones");
    const Mat ab = r1->op * r2->op;
    const Mat ba = r2->op * r1->op;
    const bool commute = (ab - ba).norm() <= 1e-9 * std::max(1.0, ab.norm());
    if (commute) return {RatioMagnitude{r1->host, ab, false}, word};
    if (word.mode() == WordMode::symmetric) return {RatioMagnitude{r1->host, 0.5 * (ab + ba), false}, word};
    return {RatioMagnitude{r1->host, ab, true}, word};
  }
  if (r1 != nullptr || r2 != nullptr) {
    const RatioMagnitude& r = r1 != nullptr ? *r1 : *r2;
    const double s = detail::as_double(r1 != nullptr ? q2.magnitude : q1.magnitude);
    return {RatioMagnitude{r.host, s * r.op, r.ordered}, word};
  }
  const auto* f1 = std::get_if<Fraction>(&q1.magnitude);
  const auto* f2 = std::get_if<Fraction>(&q2.magnitude);
  if (f1 != nullptr && f2 != nullptr) return {*f1 * *f2, word};
  return {detail::as_double(q1.magnitude) * detail::as_double(q2.magnitude), word};
}

/**
 * The rectangle on a' and b' stands to the rectangle on a and b as the
 * composed ratio (a':a)(b':b); and x -> x * b carries fraction actions.
 */
inline bool rectangle_representation_check(const Fraction& a1, const Fraction& a, const Fraction& b1,
                                           const Fraction& b) {
  const DimWord side = DimWord::symmetric_word({{"len", 1}});
  const Quantity big = conjunct({a1, side}, {b1, side});
  const Quantity small = conjunct({a, side}, {b, side});
  if (!(big.word == small.word) || big.word.degree() != 2) return false;
  const ClassicRatio areas{std::get<Fraction>(big.magnitude), std::get<Fraction>(small.magnitude)};
  const ClassicRatio composed = classic_compose({a1, a}, {b1, b});
  if (!classic_equal(areas, composed)) return false;
  // Step 1: (q x) * b = q (x * b) for a spread of fractions q.
  for (const Fraction& q : {Fraction(1, 2), Fraction(3, 2), Fraction(7, 5), Fraction(5, 1)}) {
    const Fraction lhs = apply_fraction(q, a1) * b;
    const Fraction rhs = apply_fraction(q, a1 * b);
    if (lhs != rhs) return false;
  }
  return true;
}

/// The degree-d words over one symbol form a line, and d-fold segment ratios multiply.
inline bool one_dim_collapse_check(int degree, const Fraction& antecedent = Fraction(2),
                                   const Fraction& consequent = Fraction(1)) {
  if (degree < 1) throw std::invalid_argument("one_dim_collapse_check: degree must be >= 1");
  if (word_space_dimension(1, degree, WordMode::symmetric) != 1) return false;
  const DimWord side = DimWord::symmetric_word({{"len", 1}});
  Quantity big{antecedent, side};
  Quantity small{consequent, side};
  ClassicRatio product{antecedent, consequent};
  for (int i = 1; i < degree; ++i) {
    big = conjunct(big, {antecedent, side});
    small = conjunct(small, {consequent, side});
    product = classic_compose(product, {antecedent, consequent});
  }
  if (big.word.degree() != degree) return false;
  const ClassicRatio solids{std::get<Fraction>(big.magnitude), std::get<Fraction>(small.magnitude)};
  return classic_equal(solids, product);
}

struct NoncommutativeWitness {
  DimWord free_12, free_21;
  DimWord symmetric_12, symmetric_21;
  bool free_equal = false;
  bool symmetric_equal = false;
  double magnitude_gap = 0.0;  ///< |delta_A delta_B - delta_B delta_A| on psd_real(2)
};

inline NoncommutativeWitness noncommutative_witness(int basis_size = 2) {
  if (basis_size < 2) throw std::invalid_argument("noncommutative_witness: need at least two symbols");
  static const char* names[] = {"cm", "s", "g", "K", "A", "mol", "cd"};
  auto sym = [](int i) { return i < 7 ? std::string(names[i]) : "x" + std::to_string(i); };
  NoncommutativeWitness w;
  const DimWord f1 = DimWord::free_word({sym(0)}), f2 = DimWord::free_word({sym(1)});
  const DimWord s1 = DimWord::symmetric_word({{sym(0), 1}}), s2 = DimWord::symmetric_word({{sym(1), 1}});
  w.free_12 = concat(f1, f2);
  w.free_21 = concat(f2, f1);
  w.symmetric_12 = concat(s1, s2);
  w.symmetric_21 = concat(s2, s1);
  w.free_equal = w.free_12 == w.free_21;
  w.symmetric_equal = w.symmetric_12 == w.symmetric_21;

  const ConeSpace psd = ConeSpace::psd_real(2);
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 1) = b(1, 0) = 1.0;
  const Vec unit = psd.unit();
  const Mat da = to_derivation(ratio_from_pair(psd, svec(a), unit)).mat;
  const Mat db = to_derivation(ratio_from_pair(psd, svec(b), unit)).mat;
  const Quantity qa{RatioMagnitude{psd, da, false}, f1};
  const Quantity qb{RatioMagnitude{psd, db, false}, f2};
  const Mat ab = std::get<RatioMagnitude>(conjunct(qa, qb).magnitude).op;
  const Mat ba = std::get<RatioMagnitude>(conjunct(qb, qa).magnitude).op;
  w.magnitude_gap = (ab - ba).norm();
  return w;
}

}  // namespace eudoxus
