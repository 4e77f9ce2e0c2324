#pragma once

/**
 * @file face.hpp
 * @brief Faces of the cone, carried as span projectors with a relative-interior witness.
 *
 * For the built-in cones every face is generated by an idempotent c of the
 * Jordan algebra; its projector is the quadratic representation P(c) and its
 * orthogonal face is generated by e - c. Faces of polyhedral cones are spanned
 * by the extreme rays on the tight facets.
 */

#include "eudoxus/cone_space.hpp"
#include "eudoxus/derivation.hpp"
#include "eudoxus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace eudoxus {

struct Face {
  Mat projector;  ///< orthogonal projection onto span(F)
  Vec witness;    ///< relative-interior point; an idempotent for built-in kinds

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(std::lround(projector.trace())); }
  bool is_zero() const { return dimension() == 0; }

  /// x in F: x in the cone and x in span(F).
  bool contains(const ConeSpace& space, const Vec& x, double tol = 1e-9) const {
    if (!space.contains(x)) return false;
    return (x - projector * x).norm() <= tol * std::max(1.0, x.norm());
  }
};

namespace detail {

inline Face zero_face(Eigen::Index d) { return {Mat::Zero(d, d), Vec::Zero(d)}; }

inline double support_tol(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return 1e-9 * std::max(1.0, m);
}

/// Support idempotent of a cone element of a Jordan algebra.
inline Vec support_idempotent(const JordanAlgebra& j, const Vec& a) {
  SpectralDecomposition sd = j.spectral(a);
  const double tol = support_tol(sd.values);
  Vec c = Vec::Zero(j.dim());
  for (std::size_t i = 0; i < sd.values.size(); ++i)
    if (sd.values[i] > tol) c += sd.frame[i];
  return c;
}

inline Face face_of_idempotent(const JordanAlgebra& j, const Vec& c) {
  if (c.norm() == 0.0) return zero_face(j.dim());
  return {j.quadratic(c), c};
}

inline Face face_of_rays(const std::vector<Vec>& rays, Eigen::Index d) {
  if (rays.empty()) return zero_face(d);
  Mat cols(d, static_cast<Eigen::Index>(rays.size()));
  Vec w = Vec::Zero(d);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    cols.col(static_cast<Eigen::Index>(i)) = rays[i];
    w += rays[i];
  }
  return {projector_onto_span(cols), w};
}

}  // namespace detail

/// The smallest face containing a.
inline Face face_of(const ConeSpace& space, const Vec& a) {
  require_dim(a, space.dim(), "face_of");
  if (!space.contains(a)) throw NotInCone("face_of: vector is outside the cone " + space.name());
  if (const JordanAlgebra* j = space.jordan()) return detail::face_of_idempotent(*j, detail::support_idempotent(*j, a));
  return detail::face_of_rays(space.polyhedron()->face_rays(a, 1e-9), space.dim());
}

/// F-perp = {x in K : x orthogonal to F}.
inline Face orthogonal_face(const ConeSpace& space, const Face& f) {
  const Eigen::Index d = space.dim();
  if (const JordanAlgebra* j = space.jordan()) {
    Vec c = f.is_zero() ? Vec::Zero(d) : detail::support_idempotent(*j, f.witness);
    return detail::face_of_idempotent(*j, j->identity() - c);
  }
  if (f.is_zero()) return face_of(space, space.unit());
  Mat comp = null_space(f.projector, 1e-8);
  if (comp.cols() == 0) return detail::zero_face(d);
  return detail::face_of_rays(space.polyhedron()->intersect_subspace(comp), d);
}

/// Facial derivative 1/2 (I + P_F - P_{F-perp}).
inline Derivation facial_derivative(const ConeSpace& space, const Face& f) {
  const Eigen::Index d = space.dim();
  Mat m = 0.5 * (Mat::Identity(d, d) + f.projector - orthogonal_face(space, f).projector);
  return Derivation::of(std::move(m));
}

/// Orthogonal elements whose generated faces meet only at 0.
inline bool incomparable(const ConeSpace& space, const Vec& a, const Vec& b) {
  if (!space.contains(a) || !space.contains(b)) throw NotInCone("incomparable: inputs must lie in the cone");
  if (a.norm() == 0.0 || b.norm() == 0.0) return false;
  if (std::abs(a.dot(b)) > space.eps() * a.norm() * b.norm() * 10.0) return false;
  Face fa = face_of(space, a);
  Face fb = face_of(space, b);
  return (fa.projector * fb.projector).norm() <= 1e-8;
}

struct MinimalComponent {
  double lambda;  ///< coefficient of the atom
  Vec atom;       ///< minimal element: primitive idempotent or unit extreme ray
};

struct MinimalDecomposition {
  std::vector<MinimalComponent> components;
  bool non_unique = false;    ///< repeated coefficient: the atoms inside that block are a choice
  bool single_block = false;  ///< no incomparable split was available

  Vec sum(Eigen::Index d) const {
    Vec s = Vec::Zero(d);
    for (const auto& c : components) s += c.lambda * c.atom;
    return s;
  }
};

/**
 * a = sum lambda_i a_i with pairwise incomparable minimal a_i. `hint` picks the
 * atoms inside a repeated-eigenvalue block (they are chosen to diagonalise it).
 * Components with zero coefficient are dropped unless keep_zero is set.
 */
inline MinimalDecomposition minimal_decomposition(const ConeSpace& space, const Vec& a, const Vec* hint = nullptr,
                                                  bool keep_zero = false) {
  require_dim(a, space.dim(), "minimal_decomposition");
  if (!space.contains(a)) throw NotInCone("minimal_decomposition: vector is outside the cone " + space.name());
  MinimalDecomposition out;
  if (const JordanAlgebra* j = space.jordan()) {
    SpectralDecomposition sd = j->spectral(a, hint);
    const double tol = detail::support_tol(sd.values);
    for (std::size_t i = 0; i < sd.values.size(); ++i)
      if (keep_zero || sd.values[i] > tol) out.components.push_back({std::max(sd.values[i], 0.0), sd.frame[i]});
    out.non_unique = sd.degenerate;
    return out;
  }
  const PolyhedralCone& poly = *space.polyhedron();
  std::vector<Vec> rays = poly.face_rays(a, 1e-9);
  if (rays.empty()) return out;
  Mat e(space.dim(), static_cast<Eigen::Index>(rays.size()));
  for (std::size_t i = 0; i < rays.size(); ++i) e.col(static_cast<Eigen::Index>(i)) = rays[i];
  if (numeric_rank(e) == e.cols()) {
    Vec coef = e.colPivHouseholderQr().solve(a);
    for (std::size_t i = 0; i < rays.size(); ++i)
      out.components.push_back({std::max(coef(static_cast<Eigen::Index>(i)), 0.0), rays[i]});
    return out;
  }
  out.single_block = true;
  out.components.push_back({a.norm(), a.normalized()});
  return out;
}

/// a is minimal when the face it generates is a single ray.
inline bool is_minimal(const ConeSpace& space, const Vec& a) {
  return a.norm() > 0.0 && face_of(space, a).dimension() == 1;
}

struct FacialHomogeneity {
  Verdict verdict;
  Face face;  ///< offending face, when refuted
  int faces_tested = 0;
};

/**
 * P_F - P_{F-perp} must be a derivation for every face. Polyhedral cones have
 * their faces enumerated from subsets of facets (at most 2^dim subsets are
 * visited); built-in cones are tested on faces of sampled cone points.
 */
inline FacialHomogeneity is_facially_homogeneous(const ConeSpace& space, int sample_budget = 64,
                                                 std::uint64_t seed = 3) {
  FacialHomogeneity out;
  const Eigen::Index d = space.dim();
  std::vector<Face> faces;
  bool exhaustive = false;
  if (const PolyhedralCone* poly = space.polyhedron()) {
    // Faces are generated by sums of ray subsets; cap the subsets visited.
    const std::size_t r = poly->rays().size();
    const std::size_t cap = std::size_t{1} << std::min<std::size_t>(static_cast<std::size_t>(d), 20);
    const std::size_t total = r >= 63 ? cap : std::min<std::size_t>(cap, std::size_t{1} << r);
    exhaustive = r < 63 && (std::size_t{1} << r) <= cap;
    std::vector<Mat> seen;
    for (std::size_t mask = 1; mask < total; ++mask) {
      Vec x = Vec::Zero(d);
      for (std::size_t i = 0; i < r; ++i)
        if ((mask >> i) & 1u) x += poly->rays()[i];
      Face f = face_of(space, x);
      bool dup = false;
      for (const Mat& p : seen)
        if ((p - f.projector).norm() <= 1e-8) dup = true;
      if (dup) continue;
      seen.push_back(f.projector);
      faces.push_back(f);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const JordanAlgebra& j = *space.jordan();
    for (int s = 0; s < sample_budget; ++s) {
      std::vector<Vec> frame = j.random_frame(rng);
      Vec x = Vec::Zero(d);
      for (const Vec& c : frame)
        if (u(rng) < 0.5) x += (0.5 + u(rng)) * c;
      faces.push_back(face_of(space, x));
    }
  }
  DerivationCheckOptions opt;
  opt.samples = 8;
  opt.seed = seed;
  for (const Face& f : faces) {
    ++out.faces_tested;
    Mat m = f.projector - orthogonal_face(space, f).projector;
    Verdict v = is_derivation(space, m, opt);
    if (!v.verified()) {
      out.verdict = v;
      out.verdict.detail = "face of dimension " + std::to_string(f.dimension()) + ": " + v.detail;
      out.face = f;
      return out;
    }
  }
  out.verdict.outcome = Outcome::Verified;
  out.verdict.exact = exhaustive;
  out.verdict.detail = exhaustive ? "all " + std::to_string(out.faces_tested) + " faces"
                                  : "verified on " + std::to_string(out.faces_tested) + " tested faces";
  return out;
}

struct RieszReport {
  bool riesz = false;
  std::string reason;
  Vec a, c, x;  ///< x lies in the face of a + c but not in face(a) + face(c)
};

/// Riesz additivity S_{a+c} = S_a + S_c, which holds exactly when the order is a lattice.
inline RieszReport is_riesz(const ConeSpace& space) {
  RieszReport rep;
  const Eigen::Index d = space.dim();
  switch (space.kind()) {
    case ConeKind::orthant:
      rep.riesz = true;
      rep.reason = "orthant: coordinatewise lattice";
      return rep;
    case ConeKind::polyhedral:
      rep.riesz = space.polyhedron()->is_simplicial();
      rep.reason = rep.riesz ? "simplicial: " + std::to_string(d) + " independent extreme rays"
                             : "not simplicial: " + std::to_string(space.polyhedron()->rays().size()) +
                                   " extreme rays in dimension " + std::to_string(d);
      return rep;
    case ConeKind::lorentz: {
      if (d < 3) {
        rep.riesz = true;
        rep.reason = "lorentz(2) is linearly isomorphic to the orthant";
        return rep;
      }
      rep.a = Vec::Zero(d);
      rep.c = Vec::Zero(d);
      rep.x = Vec::Zero(d);
      rep.a(0) = rep.a(1) = 1.0;
      rep.c(0) = 1.0;
      rep.c(1) = -1.0;
      rep.x(0) = rep.x(2) = 1.0;
      break;
    }
    case ConeKind::psd_real:
    case ConeKind::hermitian: {
      const int k = space.spec().param;
      if (k < 2) {
        rep.riesz = true;
        rep.reason = "k = 1: a single ray";
        return rep;
      }
      Mat a = Mat::Zero(k, k), c = Mat::Zero(k, k), x = Mat::Zero(k, k);
      a(0, 0) = 1.0;
      c(1, 1) = 1.0;
      x(0, 0) = x(0, 1) = x(1, 0) = x(1, 1) = 1.0;
      if (space.kind() == ConeKind::psd_real) {
        rep.a = svec(a), rep.c = svec(c), rep.x = svec(x);
      } else {
        rep.a = hvec(a.cast<std::complex<double>>());
        rep.c = hvec(c.cast<std::complex<double>>());
        rep.x = hvec(x.cast<std::complex<double>>());
      }
      break;
    }
  }
  // Certify the witness: x in face(a + c), x outside span(face(a)) + span(face(c)).
  Face sum_face = face_of(space, rep.a + rep.c);
  Face fa = face_of(space, rep.a);
  Face fc = face_of(space, rep.c);
  Mat both(d, 2 * d);
  both << fa.projector, fc.projector;
  Mat p = projector_onto_span(both);
  const bool in_sum_face = sum_face.contains(space, rep.x);
  const double off = (rep.x - p * rep.x).norm();
  if (!in_sum_face || off <= 1e-9) throw std::logic_error("is_riesz: stored witness failed certification");
  std::ostringstream os;
  os << "witness x in face(a+c) at distance " << off << " from face(a)+face(c)";
  rep.riesz = false;
  rep.reason = os.str();
  return rep;
}

}  // namespace eudoxus
