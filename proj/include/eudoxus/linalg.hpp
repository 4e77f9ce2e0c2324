#pragma once

// Dense linear-algebra helpers shared by the cone, face and derivation layers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace eudoxus {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_dim(const Vec& x, Eigen::Index dim, const char* what) {
  if (x.size() != dim)
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(dim) + ", got " +
                            std::to_string(x.size()));
}

/// Orthonormal basis (columns) of the null space of a, with singular values
/// below rel_tol * max(1, sigma_max) treated as zero.
inline Mat null_space(const Mat& a, double rel_tol = 1e-9) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  // Tall systems are compressed to their R factor first; the SVD then works on n x n.
  Mat work;
  if (a.rows() > n) {
    Eigen::HouseholderQR<Mat> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    work = a;
  }
  Eigen::JacobiSVD<Mat> svd(work, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double cut = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis (columns) of the column span of a.
inline Mat range_basis(const Mat& a, double rel_tol = 1e-9) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double cut = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

inline Mat projector_onto_span(const Mat& cols, double rel_tol = 1e-9) {
  Mat q = range_basis(cols, rel_tol);
  return q * q.transpose();
}

inline Eigen::Index numeric_rank(const Mat& a, double rel_tol = 1e-9) { return range_basis(a, rel_tol).cols(); }

inline Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

inline Mat unflatten(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

inline double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

/// Greedy selection of linearly independent matrices, keeping original forms.
inline std::vector<Mat> independent_subset(const std::vector<Mat>& mats, double tol = 1e-9) {
  std::vector<Mat> kept;
  std::vector<Vec> ortho;
  for (const Mat& m : mats) {
    Vec v = flatten(m);
    const double scale = std::max(1.0, v.norm());
    for (const Vec& q : ortho) v -= q.dot(v) * q;
    if (v.norm() > tol * scale) {
      ortho.push_back(v.normalized());
      kept.push_back(m);
    }
  }
  return kept;
}

/// Distance of m from the span of basis (Frobenius), via orthonormalised flats.
inline double span_residual(const std::vector<Mat>& basis, const Mat& m) {
  if (basis.empty()) return m.norm();
  Mat cols(m.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten(basis[i]);
  Mat q = range_basis(cols);
  Vec v = flatten(m);
  return (v - q * (q.transpose() * v)).norm();
}

// Isometric vectorizations: symmetric k x k -> k(k+1)/2, Hermitian k x k -> k^2.
// Entries are ordered by row-major upper triangle; off-diagonals carry sqrt(2).

inline Vec svec(const Mat& x) {
  const Eigen::Index k = x.rows();
  Vec v(k * (k + 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j)
      v(p++) = (i == j) ? x(i, i) : std::sqrt(2.0) * 0.5 * (x(i, j) + x(j, i));
  return v;
}

inline Mat smat(const Vec& v, Eigen::Index k) {
  Mat x(k, k);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      if (i == j) {
        x(i, i) = v(p++);
      } else {
        x(i, j) = x(j, i) = v(p++) / std::sqrt(2.0);
      }
    }
  return x;
}

inline Vec hvec(const CMat& x) {
  const Eigen::Index k = x.rows();
  Vec v(k * k);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      if (i == j) {
        v(p++) = x(i, i).real();
      } else {
        const std::complex<double> z = 0.5 * (x(i, j) + std::conj(x(j, i)));
        v(p++) = std::sqrt(2.0) * z.real();
        v(p++) = std::sqrt(2.0) * z.imag();
      }
    }
  return v;
}

inline CMat hmat(const Vec& v, Eigen::Index k) {
  CMat x(k, k);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      if (i == j) {
        x(i, i) = v(p++);
      } else {
        const double re = v(p++) / std::sqrt(2.0);
        const double im = v(p++) / std::sqrt(2.0);
        x(i, j) = {re, im};
        x(j, i) = {re, -im};
      }
    }
  return x;
}

/// Matrix of a linear map given by its action on the standard basis.
template <typename F>
Mat matrix_of(Eigen::Index dim, F&& apply) {
  Mat m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) m.col(j) = apply(Vec::Unit(dim, j));
  return m;
}

}  // namespace eudoxus
