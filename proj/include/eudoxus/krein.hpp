#pragma once

/**
 * @file krein.hpp
 * @brief Ordered spaces with an order unit: Krein axioms, the canonical product
 *        of a lattice-ordered space, pure states and the Gelfand map.
 *
 * The product and the function-space picture need a lattice order (a Riesz
 * cone). The canonical basis is the minimal decomposition u = sum b_i of the
 * unit; x y multiplies coordinates in that basis, so u is the ring unit.
 * Finite dimension makes the space norm-complete automatically.
 */

#include "eudoxus/cone_space.hpp"
#include "eudoxus/face.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace eudoxus {

struct State {
  Vec functional;  ///< f(x) = <functional, x>
};

struct AxiomResult {
  std::string axiom;
  bool pass = false;
  std::string detail;
  Vec x, witness;  ///< for a failed Axiom III: x and an upper bound of {0, x} below no candidate
};

class KreinSpace {
 public:
  KreinSpace(ConeSpace host, Vec unit) : host_(std::move(host)), unit_(std::move(unit)) {
    require_dim(unit_, host_.dim(), "KreinSpace");
    if (!host_.is_order_unit(unit_)) throw NotAnOrderUnit("KreinSpace: u is not an order unit");
    riesz_ = is_riesz(host_).riesz;
    MinimalDecomposition md = minimal_decomposition(host_, unit_);
    for (const auto& c : md.components) basis_.push_back(c.lambda * c.atom);
  }

  explicit KreinSpace(ConeSpace host) : KreinSpace(host, host.unit()) {}

  const ConeSpace& host() const { return host_; }
  const Vec& unit() const { return unit_; }
  bool riesz() const { return riesz_; }
  /// b_i with u = sum b_i.
  const std::vector<Vec>& canonical_basis() const { return basis_; }

  Mat basis_matrix() const {
    Mat b(host_.dim(), static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = basis_[i];
    return b;
  }

  /// Coordinates of x in the canonical basis (Riesz spaces only).
  Vec coordinates(const Vec& x) const {
    require_riesz("coordinates");
    require_dim(x, host_.dim(), "KreinSpace::coordinates");
    return basis_matrix().fullPivLu().solve(x);
  }

  Vec product(const Vec& x, const Vec& y) const {
    require_riesz("product");
    return basis_matrix() * coordinates(x).cwiseProduct(coordinates(y));
  }

  double norm(const Vec& x) const { return host_.order_unit_norm(x, unit_); }

 private:
  void require_riesz(const char* what) const {
    if (!riesz_) throw Unsupported(std::string("KreinSpace::") + what + ": the order of " + host_.name() + " is not a lattice");
  }

  ConeSpace host_;
  Vec unit_;
  bool riesz_ = false;
  std::vector<Vec> basis_;
};

namespace detail {

inline Vec random_in_cone(const ConeSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(space.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
  return space.project(v);
}

/// Least upper bound candidate of {0, x}: lattice sup on simplicial cones, metric projection otherwise.
inline Vec positive_part_candidate(const ConeSpace& space, const Vec& x) {
  if (const PolyhedralCone* poly = space.polyhedron(); poly != nullptr && poly->is_simplicial()) {
    Vec c = poly->ray_coordinates(x).cwiseMax(0.0);
    return poly->ray_matrix() * c;
  }
  return space.project(x);
}

}  // namespace detail

/**
 * Axioms I-V. Axiom III is tested by sampling upper bounds x' of {0, x} and
 * checking x' >= x_+ for the candidate positive part.
 */
inline std::vector<AxiomResult> check_axioms(const ConeSpace& space, const Vec& u, int samples = 200,
                                             std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.1, 2.0);
  auto rand_vec = [&] {
    Vec v(space.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    return v;
  };
  std::vector<AxiomResult> out;

  {
    // I: x > 0 implies x != 0, i.e. the cone is pointed: x and -x both positive only for 0.
    AxiomResult r{"I", true, "cone is pointed", {}, {}};
    for (int s = 0; s < samples && r.pass; ++s) {
      Vec x = detail::random_in_cone(space, rng);
      if (x.norm() > 1e-9 && space.contains(-x)) {
        r.pass = false;
        r.detail = "x and -x both positive";
        r.x = x;
      }
    }
    out.push_back(r);
  }
  {
    AxiomResult r{"II", true, "sums of positive elements are positive", {}, {}};
    for (int s = 0; s < samples && r.pass; ++s) {
      Vec x = detail::random_in_cone(space, rng), y = detail::random_in_cone(space, rng);
      if (!space.contains(x + y)) {
        r.pass = false;
        r.detail = "x + y left the cone";
        r.x = x;
      }
    }
    out.push_back(r);
  }
  {
    AxiomResult r{"III", true, "", {}, {}};
    int tested = 0;
    for (int s = 0; s < samples && r.pass; ++s) {
      Vec x = rand_vec();
      Vec plus = detail::positive_part_candidate(space, x);
      if (!space.contains(plus) || !space.leq(x, plus)) {
        r.pass = false;
        r.detail = "candidate positive part is not an upper bound of {0, x}";
        r.x = x;
        break;
      }
      for (int t = 0; t < 8; ++t) {
        // Upper bounds of {0, x}: x + k for k in the cone, kept when positive.
        Vec upper = x + uni(rng) * detail::random_in_cone(space, rng) + uni(rng) * plus;
        if (!space.contains(upper)) continue;
        ++tested;
        if (!space.leq(plus, upper)) {
          std::ostringstream os;
          os << "upper bound of {0, x} not above the candidate positive part (margin "
             << space.margin(upper - plus) << ")";
          r.pass = false;
          r.detail = os.str();
          r.x = x;
          r.witness = upper;
          break;
        }
      }
    }
    if (r.pass) r.detail = "least upper bound of {0, x} on " + std::to_string(tested) + " sampled upper bounds";
    out.push_back(r);
  }
  {
    AxiomResult r{"IV", true, "positive multiples of positive elements are positive", {}, {}};
    for (int s = 0; s < samples && r.pass; ++s) {
      Vec x = detail::random_in_cone(space, rng);
      if (!space.contains(uni(rng) * x)) {
        r.pass = false;
        r.detail = "lambda x left the cone";
        r.x = x;
      }
    }
    out.push_back(r);
  }
  {
    AxiomResult r{"V", true, "", {}, {}};
    if (!space.is_order_unit(u)) {
      r.pass = false;
      r.detail = "u is not an order unit";
    } else {
      double smallest = std::numeric_limits<double>::infinity();
      for (int s = 0; s < samples && r.pass; ++s) {
        Vec x = rand_vec();
        const double n = space.order_unit_norm(x, u) / x.norm();
        smallest = std::min(smallest, n);
        if (!(n > 0.0)) {
          r.pass = false;
          r.detail = "order-unit norm vanished at x != 0";
          r.x = x;
        }
      }
      if (r.pass) {
        std::ostringstream os;
        os << "|x|_u / |x| >= " << smallest << " on samples";
        r.detail = os.str();
      }
    }
    out.push_back(r);
  }
  return out;
}

struct PureStates {
  std::vector<State> states;
  bool exact = false;  ///< complete enumeration rather than a sample
};

/**
 * Extreme points of {f >= 0 on the cone, f(u) = 1}. Polyhedral and orthant
 * cones are enumerated from the facets of the dual; the other built-ins
 * return the states of sampled primitive idempotents.
 */
inline PureStates pure_states(const KreinSpace& e, int samples = 16, std::uint64_t seed = 9) {
  const ConeSpace& space = e.host();
  PureStates out;
  const Vec& u = e.unit();
  if (e.riesz()) {
    Mat dual = e.basis_matrix().inverse().transpose();
    for (Eigen::Index i = 0; i < dual.cols(); ++i) out.states.push_back({dual.col(i)});
    out.exact = true;
    return out;
  }
  if (const PolyhedralCone* poly = space.polyhedron()) {
    for (const Vec& h : poly->facets()) out.states.push_back({h / h.dot(u)});
    out.exact = true;
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s)
    for (const Vec& c : space.jordan()->random_frame(rng)) out.states.push_back({c / c.dot(u)});
  return out;
}

inline PureStates pure_states(const ConeSpace& space) { return pure_states(KreinSpace(space)); }

struct MultiplicativeResult {
  bool holds = false;
  Vec x, y;  ///< f(xy) != f(x) f(y), when it fails
};

/// f(x y) = f(x) f(y), tested on all pairs of canonical basis vectors (a spanning set).
inline MultiplicativeResult multiplicative_characterization(const KreinSpace& e, const State& f, double tol = 1e-12) {
  const auto& b = e.canonical_basis();
  for (const Vec& x : b)
    for (const Vec& y : b) {
      const double lhs = f.functional.dot(e.product(x, y));
      const double rhs = f.functional.dot(x) * f.functional.dot(y);
      if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs) + std::abs(rhs))) return {false, x, y};
    }
  return {true, {}, {}};
}

/// phi_x(f) = f(x) over the pure states.
inline Vec gelfand_map(const KreinSpace& e, const Vec& x) {
  PureStates ps = pure_states(e);
  Vec out(static_cast<Eigen::Index>(ps.states.size()));
  for (std::size_t i = 0; i < ps.states.size(); ++i) out(static_cast<Eigen::Index>(i)) = ps.states[i].functional.dot(x);
  return out;
}

/// sup over -u <= x <= u of |f(x)|; for positive f this is f(u).
inline double functional_norm(const KreinSpace& e, const State& f) {
  // The order interval [-u, u] is the unit ball of the order-unit norm; for a
  // lattice it is the box sum t_i b_i with |t_i| <= 1.
  if (e.riesz()) {
    double s = 0.0;
    for (const Vec& b : e.canonical_basis()) s += std::abs(f.functional.dot(b));
    return s;
  }
  throw Unsupported("functional_norm: needs a lattice-ordered space");
}

}  // namespace eudoxus
