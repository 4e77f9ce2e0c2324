#pragma once

/**
 * @file jordan.hpp
 * @brief The four symmetric built-in cones as Euclidean Jordan algebras.
 *
 * Each built-in cone is the cone of squares of a Euclidean Jordan algebra on
 * its coordinate space:
 *
 *  - orthant(n):   R^n with the componentwise product;
 *  - lorentz(n):   the spin factor R x R^{n-1}, (t,z)o(s,y) = (ts + z.y, ty + sz);
 *  - psd_real(k):  real symmetric k x k matrices with X o Y = (XY + YX)/2;
 *  - hermitian(k): complex Hermitian k x k matrices with the same product.
 *
 * Coordinates are the isometric vectorizations from linalg.hpp, so the trace
 * form of the algebra is the Euclidean inner product on coordinates. Every
 * face, facial projector and self-adjoint derivation of these cones is a
 * polynomial in multiplication operators, which is what the rest of the
 * library builds on.
 */

#include "eudoxus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

namespace eudoxus {

enum class JordanKind { orthant, lorentz, psd_real, hermitian };

/// x = sum values[i] * frame[i]; the frame is a complete system of
/// orthogonal primitive idempotents.
struct SpectralDecomposition {
  std::vector<double> values;
  std::vector<Vec> frame;
  bool degenerate = false;  ///< some eigenvalue repeats; the frame is not unique
};

class JordanAlgebra {
 public:
  JordanAlgebra(JordanKind kind, int param) : kind_(kind), param_(param) {
    const int min_param = kind == JordanKind::lorentz ? 2 : 1;
    if (param < min_param) throw std::invalid_argument("JordanAlgebra: parameter too small");
  }

  JordanKind kind() const { return kind_; }
  int param() const { return param_; }

  Eigen::Index dim() const {
    switch (kind_) {
      case JordanKind::orthant:
      case JordanKind::lorentz: return param_;
      case JordanKind::psd_real: return param_ * (param_ + 1) / 2;
      case JordanKind::hermitian: return param_ * param_;
    }
    return 0;
  }

  int rank() const { return kind_ == JordanKind::lorentz ? 2 : param_; }

  Vec identity() const {
    switch (kind_) {
      case JordanKind::orthant: return Vec::Ones(param_);
      case JordanKind::lorentz: return Vec::Unit(param_, 0);
      case JordanKind::psd_real: return svec(Mat::Identity(param_, param_));
      case JordanKind::hermitian: return hvec(CMat::Identity(param_, param_));
    }
    return {};
  }

  Vec product(const Vec& x, const Vec& y) const {
    switch (kind_) {
      case JordanKind::orthant: return x.cwiseProduct(y);
      case JordanKind::lorentz: {
        Vec out(param_);
        const auto n1 = param_ - 1;
        out(0) = x(0) * y(0) + x.tail(n1).dot(y.tail(n1));
        out.tail(n1) = x(0) * y.tail(n1) + y(0) * x.tail(n1);
        return out;
      }
      case JordanKind::psd_real: {
        Mat a = smat(x, param_), b = smat(y, param_);
        return svec(0.5 * (a * b + b * a));
      }
      case JordanKind::hermitian: {
        CMat a = hmat(x, param_), b = hmat(y, param_);
        return hvec(0.5 * (a * b + b * a));
      }
    }
    return {};
  }

  /// Multiplication operator L_x : y -> x o y.
  Mat multiplication(const Vec& x) const {
    return matrix_of(dim(), [&](const Vec& e) { return product(x, e); });
  }

  /// Quadratic representation P(x) = 2 L_x^2 - L_{x^2}.
  Mat quadratic(const Vec& x) const {
    Mat l = multiplication(x);
    return 2.0 * l * l - multiplication(product(x, x));
  }

  /**
   * Spectral decomposition x = sum lambda_i c_i. Matrix kinds and the spin
   * factor list eigenvalues in descending order; the orthant keeps coordinate
   * order. When x has a repeated eigenvalue, the frame inside that eigenspace
   * is chosen to diagonalise `hint` (if given), so two operator-commuting
   * elements receive a common frame.
   */
  SpectralDecomposition spectral(const Vec& x, const Vec* hint = nullptr) const {
    require_dim(x, dim(), "JordanAlgebra::spectral");
    switch (kind_) {
      case JordanKind::orthant: return spectral_orthant(x);
      case JordanKind::lorentz: return spectral_lorentz(x, hint);
      case JordanKind::psd_real: return spectral_matrix<Mat>(smat(x, param_), hint);
      case JordanKind::hermitian: return spectral_matrix<CMat>(hmat(x, param_), hint);
    }
    return {};
  }

  double min_eigenvalue(const Vec& x) const {
    switch (kind_) {
      case JordanKind::orthant: return x.minCoeff();
      case JordanKind::lorentz: return x(0) - x.tail(param_ - 1).norm();
      case JordanKind::psd_real: {
        Eigen::SelfAdjointEigenSolver<Mat> es(smat(x, param_), Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
      }
      case JordanKind::hermitian: {
        Eigen::SelfAdjointEigenSolver<CMat> es(hmat(x, param_), Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
      }
    }
    return 0.0;
  }

  /// f applied through the spectral decomposition.
  template <typename F>
  Vec apply(const Vec& x, F&& f) const {
    SpectralDecomposition sd = spectral(x);
    Vec out = Vec::Zero(dim());
    for (std::size_t i = 0; i < sd.values.size(); ++i) out += f(sd.values[i]) * sd.frame[i];
    return out;
  }

  /// A Haar-like random Jordan frame (random orthogonal / unitary / unit axis).
  std::vector<Vec> random_frame(std::mt19937_64& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec> frame;
    switch (kind_) {
      case JordanKind::orthant:
        for (int i = 0; i < param_; ++i) frame.push_back(Vec::Unit(param_, i));
        break;
      case JordanKind::lorentz: {
        Vec u(param_ - 1);
        for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = g(rng);
        u.normalize();
        Vec c(param_);
        c(0) = 0.5;
        c.tail(param_ - 1) = 0.5 * u;
        frame.push_back(c);
        c.tail(param_ - 1) = -0.5 * u;
        frame.push_back(c);
        break;
      }
      case JordanKind::psd_real: {
        Mat a(param_, param_);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
        Mat q = Eigen::HouseholderQR<Mat>(a).householderQ();
        for (int i = 0; i < param_; ++i) frame.push_back(svec(q.col(i) * q.col(i).transpose()));
        break;
      }
      case JordanKind::hermitian: {
        CMat a(param_, param_);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
        CMat q = Eigen::HouseholderQR<CMat>(a).householderQ();
        for (int i = 0; i < param_; ++i) frame.push_back(hvec(q.col(i) * q.col(i).adjoint()));
        break;
      }
    }
    return frame;
  }

 private:
  static double cluster_tol(double scale) { return 1e-8 * std::max(1.0, scale); }

  SpectralDecomposition spectral_orthant(const Vec& x) const {
    SpectralDecomposition sd;
    for (int i = 0; i < param_; ++i) {
      sd.values.push_back(x(i));
      sd.frame.push_back(Vec::Unit(param_, i));
    }
    std::vector<double> sorted = sd.values;
    std::sort(sorted.begin(), sorted.end());
    const double tol = cluster_tol(x.cwiseAbs().maxCoeff());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] - sorted[i - 1] <= tol) sd.degenerate = true;
    return sd;
  }

  SpectralDecomposition spectral_lorentz(const Vec& x, const Vec* hint) const {
    const auto n1 = param_ - 1;
    const double t = x(0);
    Vec z = x.tail(n1);
    const double r = z.norm();
    SpectralDecomposition sd;
    Vec u;
    if (r > cluster_tol(x.norm())) {
      u = z / r;
    } else {
      sd.degenerate = true;
      if (hint != nullptr && hint->tail(n1).norm() > cluster_tol(hint->norm())) {
        u = hint->tail(n1).normalized();
      } else {
        u = Vec::Unit(n1, 0);
      }
    }
    Vec c(param_);
    c(0) = 0.5;
    c.tail(n1) = 0.5 * u;
    sd.values.push_back(t + u.dot(z));
    sd.frame.push_back(c);
    c.tail(n1) = -0.5 * u;
    sd.values.push_back(t - u.dot(z));
    sd.frame.push_back(c);
    return sd;
  }

  template <typename M>
  Vec to_coords(const M& m) const {
    if constexpr (std::is_same_v<M, CMat>)
      return hvec(m);
    else
      return svec(m);
  }

  template <typename M>
  M to_matrix(const Vec& v) const {
    if constexpr (std::is_same_v<M, CMat>)
      return hmat(v, param_);
    else
      return smat(v, param_);
  }

  template <typename M>
  SpectralDecomposition spectral_matrix(const M& x, const Vec* hint) const {
    Eigen::SelfAdjointEigenSolver<M> es(x);
    Vec ev = es.eigenvalues().reverse();
    M vecs = es.eigenvectors().rowwise().reverse();
    const double tol = cluster_tol(ev.cwiseAbs().maxCoeff());
    SpectralDecomposition sd;
    M h;
    if (hint != nullptr) h = to_matrix<M>(*hint);
    Eigen::Index start = 0;
    const Eigen::Index k = ev.size();
    while (start < k) {
      Eigen::Index end = start + 1;
      while (end < k && ev(end - 1) - ev(end) <= tol) ++end;
      const Eigen::Index len = end - start;
      if (len > 1) {
        sd.degenerate = true;
        // Average the cluster so the reported value does not depend on ordering noise.
        const double mean = ev.segment(start, len).mean();
        ev.segment(start, len).setConstant(mean);
        if (hint != nullptr) {
          M block = vecs.middleCols(start, len);
          M compressed = block.adjoint() * h * block;
          compressed = 0.5 * (compressed + M(compressed.adjoint()));
          Eigen::SelfAdjointEigenSolver<M> inner(compressed);
          M rotated = block * inner.eigenvectors().rowwise().reverse();
          vecs.middleCols(start, len) = rotated;
        }
      }
      start = end;
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      sd.values.push_back(ev(i));
      sd.frame.push_back(to_coords<M>(vecs.col(i) * vecs.col(i).adjoint()));
    }
    return sd;
  }

  JordanKind kind_;
  int param_;
};

}  // namespace eudoxus
