#pragma once

/**
 * @file derivation.hpp
 * @brief Derivations of a cone: membership, Lie-algebra bases, center and orientability.
 *
 * A derivation is a linear map M with exp(tM) K = K for every real t. For the
 * built-in cones the derivation algebra has a closed-form parametrization; for
 * polyhedral cones it is cut out by the linear tangency system
 * <y, M x> = 0 over incident (extreme ray x, facet y) pairs. The same
 * tangency system, written over complementary pairs of Jordan frames, gives
 * an independent description of the built-in algebras.
 */

#include "eudoxus/cone_space.hpp"
#include "eudoxus/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace eudoxus {

struct Derivation {
  Mat mat;
  bool selfadjoint = false;

  static Derivation of(Mat m) {
    const double scale = std::max(1.0, m.norm());
    const bool sym = (m - m.transpose()).norm() <= 1e-12 * scale;
    return {std::move(m), sym};
  }
};

enum class Outcome { Verified, Refuted, Unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "Verified";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  bool exact = false;  ///< decided by a certificate rather than by sampling
  std::string detail;
  Vec witness;  ///< a point expelled from the cone, when refuted by sampling

  bool verified() const { return outcome == Outcome::Verified; }
  bool refuted() const { return outcome == Outcome::Refuted; }
};

class NotADerivation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotClosed : public std::logic_error {
 public:
  NotClosed(const std::string& what, double residual) : std::logic_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct DerivationCheckOptions {
  std::vector<double> t_grid{-4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0};
  int samples = 64;
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Closed-form parametrizations of Der(K) for the built-in kinds.

namespace detail {

inline std::vector<Mat> orthant_params(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    Mat m = Mat::Zero(n, n);
    m(i, i) = 1.0;
    out.push_back(m);
  }
  return out;
}

inline std::vector<Mat> lorentz_params(int n) {
  std::vector<Mat> out{Mat::Identity(n, n)};
  for (int j = 1; j < n; ++j) {
    Mat b = Mat::Zero(n, n);
    b(0, j) = b(j, 0) = 1.0;
    out.push_back(b);
  }
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat r = Mat::Zero(n, n);
      r(j, k) = 1.0;
      r(k, j) = -1.0;
      out.push_back(r);
    }
  return out;
}

inline std::vector<Mat> psd_params(int k) {
  const Eigen::Index d = k * (k + 1) / 2;
  std::vector<Mat> out;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Mat l = Mat::Zero(k, k);
      l(a, b) = 1.0;
      out.push_back(matrix_of(d, [&](const Vec& e) {
        Mat x = smat(e, k);
        return svec(l * x + x * l.transpose());
      }));
    }
  return out;
}

inline std::vector<Mat> hermitian_params(int k) {
  const Eigen::Index d = k * k;
  std::vector<Mat> out;
  for (int part = 0; part < 2; ++part)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        CMat l = CMat::Zero(k, k);
        l(a, b) = part == 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
        out.push_back(matrix_of(d, [&](const Vec& e) {
          CMat x = hmat(e, k);
          return hvec(l * x + x * l.adjoint());
        }));
      }
  return out;
}

inline Mat stack_flat(const std::vector<Mat>& mats) {
  if (mats.empty()) return Mat(0, 0);
  Mat cols(mats.front().size(), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten(mats[i]);
  return cols;
}

inline std::vector<Mat> unstack(const Mat& cols, Eigen::Index d) {
  std::vector<Mat> out;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) out.push_back(unflatten(cols.col(j), d, d));
  return out;
}

}  // namespace detail

/// Spanning set (not necessarily independent) of Der(K) for a built-in kind.
inline std::vector<Mat> builtin_parametrization(const ConeSpace& space) {
  const int p = space.spec().param;
  switch (space.kind()) {
    case ConeKind::orthant: return detail::orthant_params(p);
    case ConeKind::lorentz: return detail::lorentz_params(p);
    case ConeKind::psd_real: return detail::psd_params(p);
    case ConeKind::hermitian: return detail::hermitian_params(p);
    case ConeKind::polyhedral: break;
  }
  throw Unsupported("builtin_parametrization: polyhedral cones have no closed form");
}

/// Complementary pairs (x, y): x, y in K with <x, y> = 0.
inline std::vector<std::pair<Vec, Vec>> complementary_pairs(const ConeSpace& space, std::mt19937_64& rng,
                                                             int frames) {
  std::vector<std::pair<Vec, Vec>> pairs;
  if (const PolyhedralCone* poly = space.polyhedron()) {
    for (const Vec& r : poly->rays())
      for (const Vec& h : poly->facets())
        if (std::abs(h.dot(r)) <= 1e-9) pairs.emplace_back(r, h);
    return pairs;
  }
  const JordanAlgebra& j = *space.jordan();
  for (int f = 0; f < frames; ++f) {
    std::vector<Vec> frame = j.random_frame(rng);
    for (std::size_t a = 0; a < frame.size(); ++a)
      for (std::size_t b = 0; b < frame.size(); ++b)
        if (a != b) pairs.emplace_back(frame[a], frame[b]);
  }
  return pairs;
}

/**
 * Der(K) as the solution set of the tangency system <y, M x> = 0 over
 * complementary pairs. Exact for polyhedral cones; for built-ins it uses
 * random Jordan frames, which generically pin the algebra down.
 */
inline std::vector<Mat> tangency_derivation_basis(const ConeSpace& space, std::uint64_t seed = 7) {
  const Eigen::Index d = space.dim();
  std::mt19937_64 rng(seed);
  const int frames = static_cast<int>(2 * d * d + 4);
  auto pairs = complementary_pairs(space, rng, frames);
  Mat sys(static_cast<Eigen::Index>(pairs.size()), d * d);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const Vec& x = pairs[r].first;
    const Vec& y = pairs[r].second;
    // <y, M x> = sum_ij y_i M_ij x_j; column-major vec(M) has index i + j*d.
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index ii = 0; ii < d; ++ii) sys(static_cast<Eigen::Index>(r), ii + jj * d) = y(ii) * x(jj);
  }
  return detail::unstack(null_space(sys), d);
}

namespace detail {

inline std::vector<Vec> boundary_samples(const ConeSpace& space, std::mt19937_64& rng, int samples) {
  std::vector<Vec> pts;
  if (const PolyhedralCone* poly = space.polyhedron()) {
    pts = poly->rays();
    return pts;
  }
  const JordanAlgebra& j = *space.jordan();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<Vec> frame = j.random_frame(rng);
    pts.push_back(frame.front());
    // A boundary point of higher rank: drop the last frame element.
    Vec x = Vec::Zero(space.dim());
    for (std::size_t i = 0; i + 1 < frame.size(); ++i) x += (0.25 + u(rng)) * frame[i];
    if (frame.size() > 2) pts.push_back(x);
  }
  return pts;
}

}  // namespace detail

/// exp(tM) x in K for t in the grid and x over extreme rays or sampled boundary points.
inline Verdict sample_derivation(const ConeSpace& space, const Mat& m, const DerivationCheckOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  auto pts = detail::boundary_samples(space, rng, opt.samples);
  for (double t : opt.t_grid) {
    Mat e = (t * m).exp();
    for (const Vec& x : pts) {
      Vec y = e * x;
      if (space.margin(y) < -1e-8 * std::max(1.0, y.norm())) {
        std::ostringstream os;
        os << "exp(" << t << " M) expels a boundary point (margin " << space.margin(y) << ")";
        return {Outcome::Refuted, false, os.str(), x};
      }
    }
  }
  return {Outcome::Verified, false, "no violation on " + std::to_string(pts.size()) + " points x " +
                                        std::to_string(opt.t_grid.size()) + " times",
          {}};
}

/**
 * Derivation test. Built-ins are decided exactly by least-squares membership
 * in the closed-form parametrization, polyhedral cones by the tangency system.
 * A refutation is backed by an exponential-sampling witness when one is found.
 */
inline Verdict is_derivation(const ConeSpace& space, const Mat& m, const DerivationCheckOptions& opt = {}) {
  const Eigen::Index d = space.dim();
  if (m.rows() != d || m.cols() != d)
    throw DimensionMismatch("is_derivation: expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  double residual = 0.0;
  const double scale = std::max(1.0, m.norm());
  if (space.polyhedron() != nullptr) {
    std::mt19937_64 rng(opt.seed);
    for (const auto& [x, y] : complementary_pairs(space, rng, 0)) residual = std::max(residual, std::abs(y.dot(m * x)));
  } else {
    residual = span_residual(builtin_parametrization(space), m);
  }
  if (residual <= 1e-9 * scale) {
    std::ostringstream os;
    os << "certificate residual " << residual;
    return {Outcome::Verified, true, os.str(), {}};
  }
  Verdict sampled = sample_derivation(space, m, opt);
  std::ostringstream os;
  os << "certificate residual " << residual;
  if (sampled.refuted()) os << "; " << sampled.detail;
  return {Outcome::Refuted, true, os.str(), sampled.witness};
}

/// A basis of Der(K). Built-in parametrization elements are each verified by sampling.
inline std::vector<Derivation> derivation_basis(const ConeSpace& space) {
  std::vector<Mat> mats;
  if (space.polyhedron() != nullptr) {
    mats = tangency_derivation_basis(space);
  } else {
    mats = independent_subset(builtin_parametrization(space));
    DerivationCheckOptions opt;
    opt.samples = 8;
    for (const Mat& m : mats)
      if (!sample_derivation(space, m, opt).verified())
        throw std::logic_error("derivation_basis: parametrization element failed the exponential check");
  }
  std::vector<Derivation> out;
  for (Mat& m : mats) out.push_back(Derivation::of(std::move(m)));
  return out;
}

/// Basis of the symmetric elements in span(basis).
inline std::vector<Mat> symmetric_part(const std::vector<Mat>& basis) {
  if (basis.empty()) return {};
  std::vector<Mat> skew;
  for (const Mat& b : basis) skew.push_back(b - b.transpose());
  Mat coeff = null_space(detail::stack_flat(skew));
  std::vector<Mat> out;
  for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
    Mat s = Mat::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) s += coeff(static_cast<Eigen::Index>(k), c) * basis[k];
    out.push_back(0.5 * (s + s.transpose()));
  }
  return out;
}

inline std::vector<Derivation> selfadjoint_derivations(const ConeSpace& space) {
  std::vector<Mat> mats;
  for (const Derivation& d : derivation_basis(space)) mats.push_back(d.mat);
  std::vector<Derivation> out;
  for (Mat& m : symmetric_part(mats)) out.push_back(Derivation::of(std::move(m)));
  return out;
}

namespace detail {

inline std::vector<Mat> mats_of(const std::vector<Derivation>& ds) {
  std::vector<Mat> out;
  for (const Derivation& d : ds) out.push_back(d.mat);
  return out;
}

inline void require_closed(const std::vector<Mat>& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Mat c = commutator(basis[i], basis[j]);
      worst = std::max(worst, span_residual(basis, c) / std::max(1.0, c.norm()));
    }
  if (worst > 1e-9) {
    std::ostringstream os;
    os << "basis is not closed under commutators (residual " << worst << ")";
    throw NotClosed(os.str(), worst);
  }
}

}  // namespace detail

/// Elements of span(basis) commuting with every basis element.
inline std::vector<Mat> lie_center(const std::vector<Mat>& basis) {
  if (basis.empty()) return {};
  detail::require_closed(basis);
  const Eigen::Index d2 = basis.front().size();
  const auto m = static_cast<Eigen::Index>(basis.size());
  Mat sys(d2 * m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index j = 0; j < m; ++j)
      sys.block(j * d2, k, d2, 1) = flatten(commutator(basis[static_cast<std::size_t>(k)], basis[static_cast<std::size_t>(j)]));
  Mat coeff = null_space(sys);
  std::vector<Mat> out;
  for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
    Mat z = Mat::Zero(basis.front().rows(), basis.front().cols());
    for (Eigen::Index k = 0; k < m; ++k) z += coeff(k, c) * basis[static_cast<std::size_t>(k)];
    out.push_back(z);
  }
  return out;
}

inline std::vector<Mat> lie_center(const std::vector<Derivation>& basis) { return lie_center(detail::mats_of(basis)); }

enum class Orientation { Orientable, NotOrientable, Unknown };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Orientable: return "Orientable";
    case Orientation::NotOrientable: return "NotOrientable";
    case Orientation::Unknown: return "Unknown";
  }
  return "?";
}

struct OrientabilityReport {
  Orientation outcome = Orientation::Unknown;
  std::string reason;
  int derivation_dim = 0;
  int center_dim = 0;
  int quotient_dim = 0;
  int centroid_dim = 0;
  Mat complex_structure;  ///< J with J^2 = -I on the quotient, when found
};

/**
 * Complex structure on Der(K)/center: an element J of the centroid (maps
 * commuting with every ad x) with J^2 = -I. Odd quotient dimension refutes
 * at once; a zero quotient is the degenerate commutative case.
 */
inline OrientabilityReport orientability(const ConeSpace& space, std::uint64_t seed = 11) {
  OrientabilityReport rep;
  std::vector<Mat> der = detail::mats_of(derivation_basis(space));
  std::vector<Mat> center = lie_center(der);
  rep.derivation_dim = static_cast<int>(der.size());
  rep.center_dim = static_cast<int>(center.size());
  rep.quotient_dim = rep.derivation_dim - rep.center_dim;
  const int q = rep.quotient_dim;
  if (q == 0) {
    rep.outcome = Orientation::Orientable;
    rep.reason = "degenerate: Der is abelian";
    return rep;
  }
  if (q % 2 == 1) {
    rep.outcome = Orientation::NotOrientable;
    rep.reason = "odd dimension " + std::to_string(q);
    return rep;
  }
  // Orthonormal complement of the center inside Der (Frobenius inner product).
  Mat der_q = range_basis(detail::stack_flat(der));
  Mat cen_q = center.empty() ? Mat(der_q.rows(), 0) : range_basis(detail::stack_flat(center));
  Mat coords = der_q.transpose() * cen_q;  // center expressed in der_q coordinates
  Mat comp_local = coords.cols() == 0 ? Mat::Identity(der_q.cols(), der_q.cols()) : null_space(coords.transpose());
  Mat w = der_q * comp_local;
  if (w.cols() != q) {
    rep.outcome = Orientation::Unknown;
    rep.reason = "quotient basis has unexpected rank";
    return rep;
  }
  const Eigen::Index d = space.dim();
  std::vector<Mat> ad;
  for (Eigen::Index i = 0; i < q; ++i) {
    Mat a(q, q);
    Mat wi = unflatten(w.col(i), d, d);
    for (Eigen::Index j = 0; j < q; ++j) a.col(j) = w.transpose() * flatten(commutator(wi, unflatten(w.col(j), d, d)));
    ad.push_back(a);
  }
  // Centroid: T with T A = A T for every ad matrix A.
  Mat sys(static_cast<Eigen::Index>(ad.size()) * q * q, q * q);
  const Mat id = Mat::Identity(q, q);
  for (std::size_t i = 0; i < ad.size(); ++i) {
    // vec(T A - A T) = (A^T kron I - I kron A) vec(T)
    Mat k = Mat::Zero(q * q, q * q);
    for (Eigen::Index r = 0; r < q; ++r)
      for (Eigen::Index c = 0; c < q; ++c) {
        k.block(r * q, c * q, q, q) += ad[i](c, r) * id;
        k.block(r * q, c * q, q, q) -= (r == c ? 1.0 : 0.0) * ad[i];
      }
    sys.middleRows(static_cast<Eigen::Index>(i) * q * q, q * q) = k;
  }
  Mat centroid = null_space(sys);
  rep.centroid_dim = static_cast<int>(centroid.cols());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  bool saw_real = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec c(centroid.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = g(rng);
    Mat t = unflatten(centroid * c, q, q);
    Eigen::EigenSolver<Mat> es(t);
    const Eigen::VectorXcd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    bool all_complex = true;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i).imag()) <= 1e-8 * scale) all_complex = false;
    if (!all_complex) {
      saw_real = true;
      continue;
    }
    Eigen::VectorXcd sgn(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) sgn(i) = std::complex<double>(0.0, ev(i).imag() > 0 ? 1.0 : -1.0);
    CMat v = es.eigenvectors();
    Mat j = (v * sgn.asDiagonal() * v.inverse()).real();
    const double sq = (j * j + id).norm();
    double comm = 0.0;
    for (const Mat& a : ad) comm = std::max(comm, (j * a - a * j).norm());
    if (sq <= 1e-8 * q && comm <= 1e-8 * q) {
      rep.outcome = Orientation::Orientable;
      rep.reason = "centroid contains J with J^2 = -I";
      rep.complex_structure = j;
      return rep;
    }
  }
  if (saw_real) {
    rep.outcome = Orientation::NotOrientable;
    rep.reason = "no complex structure in centroid";
  } else {
    rep.outcome = Orientation::Unknown;
    rep.reason = "centroid eigen-analysis did not converge to a complex structure";
  }
  return rep;
}

}  // namespace eudoxus
