#pragma once

// Spectral faces of a self-adjoint derivation and the reconstruction
// delta = sum_i lambda_i (delta_{F(lambda_i)} - delta_{F(lambda_{i-1})}).

#include "eudoxus/cone_space.hpp"
#include "eudoxus/derivation.hpp"
#include "eudoxus/face.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace eudoxus {

struct SpectralFaceEntry {
  double lambda;
  Face face;        ///< eigenspace of lambda intersected with the cone (possibly zero)
  Face cumulative;  ///< F(lambda): face generated by the witnesses of all entries up to lambda
};

struct SpectralFaceFamily {
  std::vector<SpectralFaceEntry> entries;  ///< increasing in lambda
};

namespace detail {

struct Cluster {
  double value;
  Mat basis;  ///< orthonormal eigenvectors
};

inline std::vector<Cluster> eigen_clusters(const Mat& sym) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()));
  const Vec& ev = es.eigenvalues();
  const double tol = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Cluster> out;
  Eigen::Index start = 0;
  while (start < ev.size()) {
    Eigen::Index end = start + 1;
    while (end < ev.size() && ev(end) - ev(end - 1) <= tol) ++end;
    out.push_back({ev.segment(start, end - start).mean(), es.eigenvectors().middleCols(start, end - start)});
    start = end;
  }
  return out;
}

}  // namespace detail

/**
 * For a self-adjoint derivation delta, F_lambda = (eigenspace of lambda) meet K.
 * On the built-in cones delta is the multiplication operator L_w with
 * w = delta(e); its eigenspace for lambda meets the cone exactly in the face
 * of the idempotent collecting the spectral projections of w at lambda.
 */
inline SpectralFaceFamily spectral_faces(const ConeSpace& space, const Derivation& delta) {
  const Eigen::Index d = space.dim();
  if (delta.mat.rows() != d || delta.mat.cols() != d) throw DimensionMismatch("spectral_faces: matrix size");
  if (!delta.selfadjoint) throw NotADerivation("spectral_faces: derivation is not self-adjoint");
  Verdict v = is_derivation(space, delta.mat);
  if (!v.verified()) throw NotADerivation("spectral_faces: " + v.detail);

  SpectralFaceFamily fam;
  const auto clusters = detail::eigen_clusters(delta.mat);
  const double tol = 1e-8 * std::max(1.0, delta.mat.norm());
  if (const JordanAlgebra* j = space.jordan()) {
    const Vec w = delta.mat * j->identity();
    if ((delta.mat - j->multiplication(w)).norm() > 1e-7 * std::max(1.0, delta.mat.norm()))
      throw NotADerivation("spectral_faces: self-adjoint derivation is not a multiplication operator");
    SpectralDecomposition sd = j->spectral(w);
    for (const auto& cl : clusters) {
      Vec c = Vec::Zero(d);
      for (std::size_t i = 0; i < sd.values.size(); ++i)
        if (std::abs(sd.values[i] - cl.value) <= tol) c += sd.frame[i];
      fam.entries.push_back({cl.value, detail::face_of_idempotent(*j, c), {}});
    }
  } else {
    const PolyhedralCone& poly = *space.polyhedron();
    for (const auto& cl : clusters)
      fam.entries.push_back({cl.value, detail::face_of_rays(poly.intersect_subspace(cl.basis), d), {}});
  }

  bool any = false;
  Vec running = Vec::Zero(d);
  for (auto& e : fam.entries) {
    // Each face must sit inside its eigenspace.
    if ((delta.mat * e.face.projector - e.lambda * e.face.projector).norm() > 1e-6 * std::max(1.0, delta.mat.norm()))
      throw std::logic_error("spectral_faces: face leaves its eigenspace");
    if (!e.face.is_zero()) any = true;
    running += e.face.witness;
    e.cumulative = running.norm() == 0.0 ? detail::zero_face(d) : face_of(space, running);
  }
  if (!any) throw std::logic_error("spectral_faces: every spectral face is zero");
  return fam;
}

/// sum over jumps of lambda_i (delta_{F(lambda_i)} - delta_{F(lambda_{i-1})}).
inline Derivation reconstruct_from_faces(const ConeSpace& space, const SpectralFaceFamily& family) {
  const Eigen::Index d = space.dim();
  Mat out = Mat::Zero(d, d);
  Mat prev = facial_derivative(space, detail::zero_face(d)).mat;
  for (std::size_t i = 0; i < family.entries.size(); ++i) {
    const auto& e = family.entries[i];
    if (i > 0 && !(e.lambda > family.entries[i - 1].lambda))
      throw std::invalid_argument("reconstruct_from_faces: family is not strictly increasing");
    Mat cur = facial_derivative(space, e.cumulative).mat;
    out += e.lambda * (cur - prev);
    prev = cur;
  }
  return Derivation::of(std::move(out));
}

}  // namespace eudoxus
