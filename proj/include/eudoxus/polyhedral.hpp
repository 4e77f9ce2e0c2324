#pragma once

/**
 * @file polyhedral.hpp
 * @brief Finitely generated cones with both generator and halfspace descriptions.
 *
 * The halfspace form is obtained once, at construction, by the double
 * description method (Motzkin's incremental ray update with the combinatorial
 * adjacency test). Generators are normalised to unit length and pruned to
 * extreme rays.
 */

#include "eudoxus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace eudoxus {

class InvalidCone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Small dynamic bitset over constraint indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  IndexSet operator&(const IndexSet& o) const {
    IndexSet r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }
  bool contains(const IndexSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((o.words_[w] & ~words_[w]) != 0) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

inline bool parallel(const Vec& a, const Vec& b, double tol) { return (a - b).norm() <= tol; }

inline void push_unique(std::vector<Vec>& set, const Vec& v, double tol) {
  for (const Vec& s : set)
    if (parallel(s, v, tol)) return;
  set.push_back(v);
}

}  // namespace detail

/**
 * Extreme rays (unit length) of {y : A y >= 0}. A must have full column rank,
 * i.e. the cone must be pointed. Rows of A need not be normalised.
 */
inline std::vector<Vec> double_description(const Mat& a_in, double tol = 1e-9) {
  const Eigen::Index d = a_in.cols();
  const std::size_t m = static_cast<std::size_t>(a_in.rows());
  if (d == 0) return {};
  Mat a = a_in;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double nrm = a.row(i).norm();
    if (nrm > 0) a.row(i) /= nrm;
  }

  // Initial simplicial cone from d independent rows.
  std::vector<std::size_t> basis_rows;
  std::vector<Vec> ortho;
  for (std::size_t i = 0; i < m && static_cast<Eigen::Index>(basis_rows.size()) < d; ++i) {
    Vec v = a.row(static_cast<Eigen::Index>(i)).transpose();
    for (const Vec& q : ortho) v -= q.dot(v) * q;
    if (v.norm() > 1e-7) {
      ortho.push_back(v.normalized());
      basis_rows.push_back(i);
    }
  }
  if (static_cast<Eigen::Index>(basis_rows.size()) < d)
    throw InvalidCone("double_description: constraint system is rank deficient (cone is not pointed)");

  Mat b(d, d);
  for (Eigen::Index r = 0; r < d; ++r) b.row(r) = a.row(static_cast<Eigen::Index>(basis_rows[r]));
  Mat binv = b.fullPivLu().inverse();

  struct Ray {
    Vec v;
    detail::IndexSet zeros;
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (std::size_t r : basis_rows) processed[r] = true;
  for (Eigen::Index j = 0; j < d; ++j) {
    Ray ray{binv.col(j).normalized(), detail::IndexSet(m)};
    for (Eigen::Index r = 0; r < d; ++r)
      if (r != j) ray.zeros.set(basis_rows[r]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    const Vec row = a.row(static_cast<Eigen::Index>(i)).transpose();
    std::vector<double> s(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = row.dot(rays[k].v);
      if (s[k] > tol) {
        pos.push_back(k);
        next.push_back(rays[k]);
      } else if (s[k] < -tol) {
        neg.push_back(k);
      } else {
        Ray z = rays[k];
        z.zeros.set(i);
        next.push_back(std::move(z));
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        detail::IndexSet common = rays[p].zeros & rays[n].zeros;
        if (common.count() < d - 2) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (rays[k].zeros.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v = s[p] * rays[n].v - s[n] * rays[p].v;
        const double nrm = v.norm();
        if (nrm <= tol) continue;
        Ray nr{v / nrm, common};
        nr.zeros.set(i);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  std::vector<Vec> out;
  for (const Ray& r : rays) detail::push_unique(out, r.v, 1e-7);
  return out;
}

/// Nonnegative least squares min ||E mu - x||, mu >= 0 (Lawson-Hanson active set).
inline Vec nnls(const Mat& e, const Vec& x, double tol = 1e-12) {
  const Eigen::Index m = e.cols();
  Vec mu = Vec::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  const double scale = std::max(1.0, x.norm());
  for (int outer = 0; outer < 10 * static_cast<int>(m) + 10; ++outer) {
    Vec w = e.transpose() * (x - e * mu);
    Eigen::Index best = -1;
    double best_w = tol * scale;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 10 * static_cast<int>(m) + 10; ++inner) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j]) idx.push_back(j);
      Mat ep(e.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t k = 0; k < idx.size(); ++k) ep.col(static_cast<Eigen::Index>(k)) = e.col(idx[k]);
      Vec sp = ep.colPivHouseholderQr().solve(x);
      bool feasible = true;
      for (Eigen::Index k = 0; k < sp.size(); ++k)
        if (sp(k) <= 0) feasible = false;
      if (feasible) {
        mu.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) mu(idx[k]) = sp(static_cast<Eigen::Index>(k));
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double sk = sp(static_cast<Eigen::Index>(k));
        const double mk = mu(idx[k]);
        if (sk <= 0) alpha = std::min(alpha, mk / (mk - sk));
      }
      for (std::size_t k = 0; k < idx.size(); ++k)
        mu(idx[k]) += alpha * (sp(static_cast<Eigen::Index>(k)) - mu(idx[k]));
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (mu(idx[k]) <= tol * scale) {
          mu(idx[k]) = 0.0;
          passive[idx[k]] = false;
        }
    }
  }
  return mu;
}

/// A pointed, full-dimensional polyhedral cone.
class PolyhedralCone {
 public:
  PolyhedralCone(std::vector<Vec> generators, Eigen::Index dim) : dim_(dim), generators_(std::move(generators)) {
    if (dim_ < 1) throw InvalidCone("polyhedral cone: dimension must be positive");
    if (generators_.empty()) throw InvalidCone("polyhedral cone: no generators");
    std::vector<Vec> unit;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const Vec& g = generators_[i];
      if (g.size() != dim_)
        throw InvalidCone("polyhedral cone: generator " + std::to_string(i + 1) + " has dimension " +
                          std::to_string(g.size()) + ", expected " + std::to_string(dim_));
      if (!g.allFinite()) throw InvalidCone("polyhedral cone: generator " + std::to_string(i + 1) + " is not finite");
      if (g.norm() == 0.0) throw InvalidCone("polyhedral cone: generator " + std::to_string(i + 1) + " is zero");
      Vec u = g.normalized();
      for (const Vec& v : unit)
        if ((u - v).norm() <= 1e-9)
          throw InvalidCone("polyhedral cone: generator " + std::to_string(i + 1) +
                            " is a positive multiple of an earlier generator");
      unit.push_back(u);
    }
    Mat g(static_cast<Eigen::Index>(unit.size()), dim_);
    for (std::size_t i = 0; i < unit.size(); ++i) g.row(static_cast<Eigen::Index>(i)) = unit[i].transpose();
    if (numeric_rank(g) < dim_) throw InvalidCone("polyhedral cone: generators do not span the space (empty interior)");

    facets_ = double_description(g);
    Mat h(static_cast<Eigen::Index>(facets_.size()), dim_);
    for (std::size_t i = 0; i < facets_.size(); ++i) h.row(static_cast<Eigen::Index>(i)) = facets_[i].transpose();
    if (facets_.empty() || numeric_rank(h) < dim_) throw InvalidCone("polyhedral cone: cone contains a line");

    // A generator is extreme iff its tight facets have rank dim - 1.
    for (const Vec& u : unit) {
      std::vector<Eigen::Index> tight;
      for (std::size_t f = 0; f < facets_.size(); ++f)
        if (std::abs(facets_[f].dot(u)) <= 1e-9) tight.push_back(static_cast<Eigen::Index>(f));
      Mat t(static_cast<Eigen::Index>(tight.size()), dim_);
      for (std::size_t k = 0; k < tight.size(); ++k) t.row(static_cast<Eigen::Index>(k)) = h.row(tight[k]);
      if (dim_ == 1 || (!tight.empty() && numeric_rank(t) == dim_ - 1)) rays_.push_back(u);
    }
  }

  Eigen::Index dim() const { return dim_; }
  const std::vector<Vec>& generators() const { return generators_; }
  /// Unit extreme rays.
  const std::vector<Vec>& rays() const { return rays_; }
  /// Unit inner facet normals: K = {x : <h, x> >= 0 for all h}.
  const std::vector<Vec>& facets() const { return facets_; }

  double margin(const Vec& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec& h : facets_) m = std::min(m, h.dot(x));
    return m;
  }

  bool is_simplicial() const { return static_cast<Eigen::Index>(rays_.size()) == dim_; }

  /// Self-dual iff the unit extreme rays and unit facet normals coincide as sets.
  bool is_self_dual(double tol = 1e-9) const {
    if (rays_.size() != facets_.size()) return false;
    for (const Vec& r : rays_) {
      bool found = false;
      for (const Vec& h : facets_)
        if (detail::parallel(r, h, tol)) found = true;
      if (!found) return false;
    }
    return true;
  }

  std::vector<std::size_t> tight_facets(const Vec& x, double tol) const {
    std::vector<std::size_t> out;
    const double scale = std::max(x.norm(), 1e-300);
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (facets_[f].dot(x) <= tol * scale) out.push_back(f);
    return out;
  }

  /// Extreme rays of the smallest face containing x (x assumed in the cone).
  std::vector<Vec> face_rays(const Vec& x, double tol) const {
    if (x.norm() == 0.0) return {};
    auto tight = tight_facets(x, tol);
    std::vector<Vec> out;
    for (const Vec& r : rays_) {
      bool in = true;
      for (std::size_t f : tight)
        if (std::abs(facets_[f].dot(r)) > 1e-9) in = false;
      if (in) out.push_back(r);
    }
    return out;
  }

  Mat ray_matrix() const {
    Mat e(dim_, static_cast<Eigen::Index>(rays_.size()));
    for (std::size_t i = 0; i < rays_.size(); ++i) e.col(static_cast<Eigen::Index>(i)) = rays_[i];
    return e;
  }

  /// Metric projection onto the cone.
  Vec project(const Vec& x) const {
    Mat e = ray_matrix();
    return e * nnls(e, x);
  }

  /// Coordinates of x in the extreme-ray basis (simplicial cones only).
  Vec ray_coordinates(const Vec& x) const {
    if (!is_simplicial()) throw InvalidCone("ray coordinates need a simplicial cone");
    return ray_matrix().fullPivLu().solve(x);
  }

  /// Extreme rays of K intersected with the column span of `basis`.
  std::vector<Vec> intersect_subspace(const Mat& basis_in) const {
    Mat basis = range_basis(basis_in);
    if (basis.cols() == 0) return {};
    Mat h(static_cast<Eigen::Index>(facets_.size()), dim_);
    for (std::size_t i = 0; i < facets_.size(); ++i) h.row(static_cast<Eigen::Index>(i)) = facets_[i].transpose();
    std::vector<Vec> local = double_description(h * basis);
    std::vector<Vec> out;
    for (const Vec& y : local) detail::push_unique(out, (basis * y).normalized(), 1e-7);
    return out;
  }

 private:
  Eigen::Index dim_;
  std::vector<Vec> generators_;
  std::vector<Vec> rays_;
  std::vector<Vec> facets_;
};

}  // namespace eudoxus
