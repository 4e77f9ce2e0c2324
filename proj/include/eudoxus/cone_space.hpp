#pragma once

/**
 * @file cone_space.hpp
 * @brief A finite-dimensional real inner-product space ordered by a proper cone.
 *
 * ConeSpace is an immutable value; copies share the underlying algebra or
 * polyhedron. Every strict comparison in the library goes through a single
 * relative tolerance, eps (default 1e-9): x is Interior when its margin
 * (smallest eigenvalue, or smallest facet pairing) exceeds eps * |x|, Outside
 * when it is below -eps * |x|, and Boundary in between.
 */

#include "eudoxus/jordan.hpp"
#include "eudoxus/linalg.hpp"
#include "eudoxus/polyhedral.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace eudoxus {

enum class ConeKind { orthant, lorentz, psd_real, hermitian, polyhedral };

inline const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::orthant: return "orthant";
    case ConeKind::lorentz: return "lorentz";
    case ConeKind::psd_real: return "psd_real";
    case ConeKind::hermitian: return "hermitian";
    case ConeKind::polyhedral: return "polyhedral";
  }
  return "?";
}

/// orthant/lorentz/polyhedral: param is the ambient dimension; psd_real/hermitian: param is k.
struct ConeSpec {
  ConeKind kind = ConeKind::orthant;
  int param = 1;
  std::vector<Vec> generators;
};

enum class Membership { Interior, Boundary, Outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotAnOrderUnit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInCone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct JordanParts {
  Vec plus;
  Vec minus;
};

class ConeSpace {
 public:
  static constexpr double kDefaultEps = 1e-9;

  static ConeSpace orthant(int n) { return from_spec({ConeKind::orthant, n, {}}); }
  static ConeSpace lorentz(int n) { return from_spec({ConeKind::lorentz, n, {}}); }
  static ConeSpace psd_real(int k) { return from_spec({ConeKind::psd_real, k, {}}); }
  static ConeSpace hermitian(int k) { return from_spec({ConeKind::hermitian, k, {}}); }
  static ConeSpace polyhedral(std::vector<Vec> generators, int dim) {
    return from_spec({ConeKind::polyhedral, dim, std::move(generators)});
  }

  static ConeSpace from_spec(ConeSpec spec, double eps = kDefaultEps) {
    ConeSpace s;
    s.eps_ = eps;
    switch (spec.kind) {
      case ConeKind::orthant:
        if (spec.param < 1) throw InvalidCone("orthant: dimension must be >= 1");
        s.jordan_ = std::make_shared<const JordanAlgebra>(JordanKind::orthant, spec.param);
        break;
      case ConeKind::lorentz:
        if (spec.param < 2) throw InvalidCone("lorentz: dimension must be >= 2");
        s.jordan_ = std::make_shared<const JordanAlgebra>(JordanKind::lorentz, spec.param);
        break;
      case ConeKind::psd_real:
        if (spec.param < 1) throw InvalidCone("psd_real: k must be >= 1");
        s.jordan_ = std::make_shared<const JordanAlgebra>(JordanKind::psd_real, spec.param);
        break;
      case ConeKind::hermitian:
        if (spec.param < 1) throw InvalidCone("hermitian: k must be >= 1");
        s.jordan_ = std::make_shared<const JordanAlgebra>(JordanKind::hermitian, spec.param);
        break;
      case ConeKind::polyhedral:
        s.poly_ = std::make_shared<const PolyhedralCone>(spec.generators, spec.param);
        break;
    }
    s.spec_ = std::move(spec);
    s.dim_ = s.jordan_ ? s.jordan_->dim() : s.poly_->dim();
    return s;
  }

  ConeSpace with_eps(double eps) const {
    ConeSpace s = *this;
    s.eps_ = eps;
    return s;
  }

  ConeKind kind() const { return spec_.kind; }
  const ConeSpec& spec() const { return spec_; }
  Eigen::Index dim() const { return dim_; }
  double eps() const { return eps_; }

  /// Null for polyhedral cones.
  const JordanAlgebra* jordan() const { return jordan_.get(); }
  /// Null for built-in kinds.
  const PolyhedralCone* polyhedron() const { return poly_.get(); }

  std::string name() const {
    if (poly_) return "polyhedral(dim=" + std::to_string(dim_) + ", rays=" + std::to_string(poly_->rays().size()) + ")";
    return std::string(to_string(spec_.kind)) + "(" + std::to_string(spec_.param) + ")";
  }

  /// Signed distance-like margin: >= 0 exactly on the cone.
  double margin(const Vec& x) const {
    require_dim(x, dim_, "ConeSpace::margin");
    return jordan_ ? jordan_->min_eigenvalue(x) : poly_->margin(x);
  }

  Membership membership(const Vec& x) const {
    const double m = margin(x);
    const double band = eps_ * x.norm();
    if (m > band) return Membership::Interior;
    if (m >= -band) return Membership::Boundary;
    return Membership::Outside;
  }

  bool contains(const Vec& x) const { return membership(x) != Membership::Outside; }

  bool leq(const Vec& x, const Vec& y) const {
    require_dim(x, dim_, "ConeSpace::leq");
    require_dim(y, dim_, "ConeSpace::leq");
    return contains(y - x);
  }
  bool lt(const Vec& x, const Vec& y) const {
    return leq(x, y) && (y - x).norm() > eps_ * std::max({x.norm(), y.norm(), 1e-300});
  }
  bool lt_interior(const Vec& x, const Vec& y) const {
    require_dim(x, dim_, "ConeSpace::lt_interior");
    require_dim(y, dim_, "ConeSpace::lt_interior");
    return membership(y - x) == Membership::Interior;
  }

  /// Built-in kinds are self-dual by construction; polyhedral cones compare rays with facets.
  bool is_self_dual() const { return jordan_ ? true : poly_->is_self_dual(); }

  bool is_order_unit(const Vec& u) const { return membership(u) == Membership::Interior; }

  /// Canonical order unit: the Jordan identity, or the sum of unit extreme rays.
  Vec unit() const {
    if (jordan_) return jordan_->identity();
    Vec u = Vec::Zero(dim_);
    for (const Vec& r : poly_->rays()) u += r;
    return u;
  }

  /// Nearest point of the cone.
  Vec project(const Vec& x) const {
    require_dim(x, dim_, "ConeSpace::project");
    if (jordan_) return jordan_->apply(x, [](double l) { return std::max(l, 0.0); });
    return poly_->project(x);
  }

  /**
   * x = plus - minus with both parts in the cone and orthogonal: plus is the
   * metric projection of x, minus its Moreau complement.
   */
  JordanParts jordan_decompose(const Vec& x) const {
    require_dim(x, dim_, "ConeSpace::jordan_decompose");
    if (!is_self_dual()) throw Unsupported("jordan_decompose: cone " + name() + " is not self-dual");
    if (jordan_) {
      SpectralDecomposition sd = jordan_->spectral(x);
      JordanParts parts{Vec::Zero(dim_), Vec::Zero(dim_)};
      for (std::size_t i = 0; i < sd.values.size(); ++i) {
        if (sd.values[i] > 0)
          parts.plus += sd.values[i] * sd.frame[i];
        else
          parts.minus -= sd.values[i] * sd.frame[i];
      }
      return parts;
    }
    // Moreau with polar cone -K: x = P(x) - P(-x).
    return {poly_->project(x), poly_->project(-x)};
  }

  /// inf{ t : -t u <= x <= t u }.
  double order_unit_norm(const Vec& x, const Vec& u) const {
    require_dim(x, dim_, "ConeSpace::order_unit_norm");
    if (!is_order_unit(u)) throw NotAnOrderUnit("order_unit_norm: u is not an order unit of " + name());
    if (x.norm() == 0.0) return 0.0;
    if (jordan_) {
      // Spectral radius of P(u^{-1/2}) x.
      Vec u_inv_sqrt = jordan_->apply(u, [](double l) { return 1.0 / std::sqrt(l); });
      Vec y = jordan_->quadratic(u_inv_sqrt) * x;
      double r = 0.0;
      for (double l : jordan_->spectral(y).values) r = std::max(r, std::abs(l));
      return r;
    }
    return order_unit_norm_bisection(x, u);
  }

  /// Same quantity by bisection on membership margins; works for every kind.
  double order_unit_norm_bisection(const Vec& x, const Vec& u) const {
    if (!is_order_unit(u)) throw NotAnOrderUnit("order_unit_norm: u is not an order unit of " + name());
    if (x.norm() == 0.0) return 0.0;
    auto ok = [&](double t) { return margin(t * u - x) >= 0.0 && margin(t * u + x) >= 0.0; };
    double hi = 1.0;
    while (!ok(hi)) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (ok(mid))
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }

 private:
  ConeSpace() = default;

  ConeSpec spec_;
  Eigen::Index dim_ = 0;
  double eps_ = kDefaultEps;
  std::shared_ptr<const JordanAlgebra> jordan_;
  std::shared_ptr<const PolyhedralCone> poly_;
};

}  // namespace eudoxus
