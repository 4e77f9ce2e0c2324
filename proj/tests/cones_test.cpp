// Cones, faces, derivations, spectral faces, vector ratios and Krein spaces.

#include "eudoxus/eudoxus.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace eudoxus;

namespace {

std::vector<ConeSpace> canonical() {
  return {ConeSpace::orthant(3), ConeSpace::lorentz(3), ConeSpace::psd_real(2), ConeSpace::hermitian(2)};
}

ConeSpace wedge() { return ConeSpace::polyhedral({(Vec(2) << 1, 0).finished(), (Vec(2) << 1, 1).finished()}, 2); }

ConeSpace square_cone() {
  return ConeSpace::polyhedral({(Vec(3) << 1, 1, 0).finished(), (Vec(3) << 1, 0, 1).finished(),
                                (Vec(3) << 1, -1, 0).finished(), (Vec(3) << 1, 0, -1).finished()},
                               3);
}

Vec gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

/// Independent membership test: eigenvalues of the matrix a vector encodes, or coordinates directly.
double oracle_margin(const ConeSpace& space, const Vec& x) {
  switch (space.kind()) {
    case ConeKind::orthant: return x.minCoeff();
    case ConeKind::lorentz: return x(0) - x.tail(x.size() - 1).norm();
    case ConeKind::psd_real: {
      const Mat m = smat(x, space.spec().param);
      return Eigen::SelfAdjointEigenSolver<Mat>(m).eigenvalues()(0);
    }
    case ConeKind::hermitian: {
      const CMat m = hmat(x, space.spec().param);
      return Eigen::SelfAdjointEigenSolver<CMat>(m).eigenvalues()(0);
    }
    case ConeKind::polyhedral: {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& h : space.polyhedron()->facets()) best = std::min(best, h.dot(x) / h.norm());
      return best;
    }
  }
  return 0.0;
}

/// exp(t m) keeps sampled boundary and interior points in the cone for t of both signs.
bool flow_preserves(const ConeSpace& space, const Mat& m, std::mt19937_64& rng) {
  for (double t : {-1.0, -0.3, 0.3, 1.0}) {
    const Mat e = (t * m).exp();
    for (int s = 0; s < 40; ++s) {
      Vec x = space.project(gaussian(space.dim(), rng));
      if (x.norm() < 1e-9) continue;
      x /= x.norm();
      if (oracle_margin(space, e * x) < -1e-7 * (e * x).norm()) return false;
    }
  }
  return true;
}

Derivation random_selfadjoint(const ConeSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto basis = selfadjoint_derivations(space);
  Mat m = Mat::Zero(space.dim(), space.dim());
  for (const Derivation& b : basis) m += g(rng) * b.mat;
  return Derivation::of(0.5 * (m + m.transpose()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Cone spaces

TEST(ConeSpace, DimensionsAndNames) {
  EXPECT_EQ(ConeSpace::psd_real(3).dim(), 6);
  EXPECT_EQ(ConeSpace::hermitian(3).dim(), 9);
  EXPECT_EQ(ConeSpace::lorentz(4).dim(), 4);
  EXPECT_THROW(ConeSpace::orthant(0), InvalidCone);
}

TEST(ConeSpace, MembershipAgreesWithEigenvalueOracle) {
  std::mt19937_64 rng(1);
  auto cones = canonical();
  cones.push_back(wedge());
  cones.push_back(square_cone());
  for (const ConeSpace& c : cones)
    for (int i = 0; i < 300; ++i) {
      const Vec x = gaussian(c.dim(), rng);
      const double m = oracle_margin(c, x);
      if (std::abs(m) < 1e-6) continue;
      EXPECT_EQ(c.contains(x), m > 0) << c.name();
    }
}

TEST(ConeSpace, UnitIsAnOrderUnit) {
  for (const ConeSpace& c : canonical()) {
    EXPECT_TRUE(c.is_order_unit(c.unit())) << c.name();
    EXPECT_FALSE(c.is_order_unit(Vec::Zero(c.dim())));
  }
  EXPECT_TRUE(square_cone().is_order_unit(square_cone().unit()));
}

TEST(ConeSpace, SelfDuality) {
  for (const ConeSpace& c : canonical()) EXPECT_TRUE(c.is_self_dual()) << c.name();
  EXPECT_FALSE(wedge().is_self_dual());
  EXPECT_FALSE(square_cone().is_self_dual());
  const ConeSpace rotated = ConeSpace::polyhedral({(Vec(2) << 1, 1).finished(), (Vec(2) << 1, -1).finished()}, 2);
  EXPECT_TRUE(rotated.is_self_dual());
}

TEST(ConeSpace, DoubleDescriptionOfSquareCone) {
  const ConeSpace cone = square_cone();
  const PolyhedralCone& p = *cone.polyhedron();
  EXPECT_EQ(p.rays().size(), 4u);
  ASSERT_EQ(p.facets().size(), 4u);
  // Each facet is tight on exactly two adjacent rays and positive on the others.
  for (const Vec& h : p.facets()) {
    int tight = 0;
    for (const Vec& r : p.rays()) {
      EXPECT_GE(h.dot(r), -1e-12);
      if (std::abs(h.dot(r)) < 1e-9) ++tight;
    }
    EXPECT_EQ(tight, 2);
  }
  EXPECT_FALSE(p.is_simplicial());
}

TEST(ConeSpace, RedundantGeneratorsAreDropped) {
  const ConeSpace c = ConeSpace::polyhedral(
      {(Vec(2) << 1, 0).finished(), (Vec(2) << 1, 1).finished(), (Vec(2) << 2, 1).finished()}, 2);
  EXPECT_EQ(c.polyhedron()->rays().size(), 2u);
  EXPECT_THROW(ConeSpace::polyhedral({(Vec(2) << 1, 0).finished(), (Vec(2) << -1, 0).finished()}, 2), InvalidCone);
}

TEST(ConeSpaceProperty, ProjectionIsNearestPoint) {
  std::mt19937_64 rng(2);
  auto cones = canonical();
  cones.push_back(wedge());
  cones.push_back(square_cone());
  for (const ConeSpace& c : cones)
    for (int i = 0; i < 100; ++i) {
      const Vec x = gaussian(c.dim(), rng);
      const Vec p = c.project(x);
      EXPECT_TRUE(c.contains(p));
      EXPECT_LT((c.project(p) - p).norm(), 1e-8);
      // Variational inequality <x - p, y - p> <= 0 for sampled cone points y.
      for (int s = 0; s < 10; ++s) {
        const Vec y = c.project(gaussian(c.dim(), rng));
        EXPECT_LE((x - p).dot(y - p), 1e-7 * (1.0 + x.squaredNorm() + y.squaredNorm())) << c.name();
      }
    }
}

TEST(ConeSpaceProperty, JordanDecompositionOrthogonalParts) {
  std::mt19937_64 rng(3);
  for (const ConeSpace& c : canonical())
    for (int i = 0; i < 200; ++i) {
      const Vec x = gaussian(c.dim(), rng);
      const JordanParts p = c.jordan_decompose(x);
      EXPECT_LT((p.plus - p.minus - x).norm(), 1e-9 * x.norm());
      EXPECT_TRUE(c.contains(p.plus));
      EXPECT_TRUE(c.contains(p.minus));
      EXPECT_LT(std::abs(p.plus.dot(p.minus)), 1e-9 * x.squaredNorm());
    }
  EXPECT_THROW(wedge().jordan_decompose(Vec::Ones(2)), Unsupported);
}

TEST(ConeSpace, LorentzClosedForm) {
  const JordanParts p = ConeSpace::lorentz(3).jordan_decompose(Vec::Unit(3, 1));
  EXPECT_NEAR(p.plus(0), 0.5, 1e-12);
  EXPECT_NEAR(p.plus(1), 0.5, 1e-12);
  EXPECT_NEAR(p.minus(0), 0.5, 1e-12);
  EXPECT_NEAR(p.minus(1), -0.5, 1e-12);
}

TEST(ConeSpaceProperty, OrderUnitNormAgreesWithBisection) {
  std::mt19937_64 rng(4);
  auto cones = canonical();
  cones.push_back(square_cone());
  for (const ConeSpace& c : cones)
    for (int i = 0; i < 50; ++i) {
      const Vec x = gaussian(c.dim(), rng);
      EXPECT_NEAR(c.order_unit_norm(x, c.unit()), c.order_unit_norm_bisection(x, c.unit()), 1e-7 * (1 + x.norm()))
          << c.name();
    }
}

TEST(ConeSpace, DimensionMismatchIsReported) {
  EXPECT_THROW(ConeSpace::orthant(3).contains(Vec::Ones(2)), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// Derivation algebras

TEST(Derivation, DimensionsFollowClosedForms) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(derivation_basis(ConeSpace::orthant(n)).size(), static_cast<std::size_t>(n));
  for (int n = 2; n <= 5; ++n)
    EXPECT_EQ(derivation_basis(ConeSpace::lorentz(n)).size(), static_cast<std::size_t>(1 + n * (n - 1) / 2));
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(derivation_basis(ConeSpace::psd_real(k)).size(), static_cast<std::size_t>(k * k));
    EXPECT_EQ(selfadjoint_derivations(ConeSpace::psd_real(k)).size(), static_cast<std::size_t>(k * (k + 1) / 2));
    EXPECT_EQ(derivation_basis(ConeSpace::hermitian(k)).size(), static_cast<std::size_t>(2 * k * k - 1));
    EXPECT_EQ(selfadjoint_derivations(ConeSpace::hermitian(k)).size(), static_cast<std::size_t>(k * k));
  }
}

TEST(Derivation, PolyhedralDimensions) {
  EXPECT_EQ(derivation_basis(wedge()).size(), 2u);
  // Four rays in general position in 3 space: only multiples of the identity survive.
  EXPECT_EQ(derivation_basis(square_cone()).size(), 1u);
}

TEST(DerivationProperty, BasisFlowsPreserveTheCone) {
  std::mt19937_64 rng(5);
  auto cones = canonical();
  cones.push_back(wedge());
  cones.push_back(square_cone());
  for (const ConeSpace& c : cones)
    for (const Derivation& d : derivation_basis(c)) EXPECT_TRUE(flow_preserves(c, d.mat, rng)) << c.name();
}

TEST(DerivationProperty, TangencyOracleSpansTheSameAlgebra) {
  for (const ConeSpace& c : canonical()) {
    std::vector<Mat> basis;
    for (const Derivation& d : derivation_basis(c)) basis.push_back(d.mat);
    const auto oracle = tangency_derivation_basis(c);
    ASSERT_EQ(oracle.size(), basis.size()) << c.name();
    for (const Mat& m : oracle) EXPECT_LT(span_residual(basis, m), 1e-8) << c.name();
  }
}

TEST(Derivation, RefutesNonDerivationsWithWitness) {
  std::mt19937_64 rng(6);
  for (const ConeSpace& c : canonical()) {
    Mat m = Mat::Zero(c.dim(), c.dim());
    m(0, c.dim() - 1) = 1.0;
    m(c.dim() - 1, 0) = 1.0;
    if (c.kind() == ConeKind::lorentz) m = Mat::Zero(3, 3), m(1, 2) = 1.0, m(2, 2) = 1.0;
    const Verdict v = is_derivation(c, m);
    EXPECT_TRUE(v.refuted()) << c.name();
    EXPECT_FALSE(flow_preserves(c, m, rng)) << c.name();
  }
}

TEST(Derivation, CenterDimensions) {
  EXPECT_EQ(lie_center(derivation_basis(ConeSpace::orthant(3))).size(), 3u);
  EXPECT_EQ(lie_center(derivation_basis(ConeSpace::lorentz(3))).size(), 1u);
  EXPECT_EQ(lie_center(derivation_basis(ConeSpace::psd_real(2))).size(), 1u);
  EXPECT_EQ(lie_center(derivation_basis(ConeSpace::hermitian(2))).size(), 1u);
}

TEST(Derivation, CenterOfNonAlgebraIsRejected) {
  std::vector<Mat> not_closed{Mat::Zero(2, 2), Mat::Zero(2, 2)};
  not_closed[0](0, 1) = 1.0;
  not_closed[1](1, 0) = 1.0;
  EXPECT_THROW(lie_center(not_closed), NotClosed);
}

TEST(Derivation, Orientability) {
  const OrientabilityReport o = orientability(ConeSpace::orthant(3));
  EXPECT_EQ(o.outcome, Orientation::Orientable);
  EXPECT_EQ(o.quotient_dim, 0);
  const OrientabilityReport p = orientability(ConeSpace::psd_real(2));
  EXPECT_EQ(p.outcome, Orientation::NotOrientable);
  EXPECT_EQ(p.reason, "odd dimension 3");
  const OrientabilityReport h = orientability(ConeSpace::hermitian(2));
  ASSERT_EQ(h.outcome, Orientation::Orientable);
  ASSERT_EQ(h.complex_structure.rows(), 6);
  EXPECT_LT((h.complex_structure * h.complex_structure + Mat::Identity(6, 6)).norm(), 1e-8);
}

// ---------------------------------------------------------------------------
// Faces

TEST(Face, DimensionsOfGeneratedFaces) {
  const ConeSpace psd = ConeSpace::psd_real(2);
  Mat e11 = Mat::Zero(2, 2);
  e11(0, 0) = 1.0;
  EXPECT_EQ(face_of(psd, svec(e11)).dimension(), 1);
  EXPECT_EQ(face_of(psd, psd.unit()).dimension(), 3);
  EXPECT_EQ(face_of(ConeSpace::lorentz(3), (Vec(3) << 1, 1, 0).finished()).dimension(), 1);
  EXPECT_EQ(face_of(ConeSpace::orthant(3), (Vec(3) << 1, 0, 2).finished()).dimension(), 2);
  EXPECT_EQ(face_of(square_cone(), (Vec(3) << 2, 1, 1).finished()).dimension(), 2);
  EXPECT_THROW(face_of(psd, -psd.unit()), NotInCone);
}

TEST(Face, OrthogonalFacesAndFacialDerivative) {
  const ConeSpace c = ConeSpace::orthant(3);
  const Face f = face_of(c, (Vec(3) << 1, 0, 0).finished());
  const Face g = orthogonal_face(c, f);
  EXPECT_EQ(g.dimension(), 2);
  EXPECT_LT((f.projector * g.projector).norm(), 1e-12);
  const Derivation d = facial_derivative(c, f);
  EXPECT_LT((d.mat - (Vec(3) << 1, 0, 0).finished().asDiagonal().toDenseMatrix()).norm(), 1e-12);
  EXPECT_TRUE(is_derivation(c, d.mat).verified());
}

TEST(FaceProperty, FacialDerivativesAreDerivations) {
  std::mt19937_64 rng(7);
  for (const ConeSpace& c : canonical())
    for (int i = 0; i < 10; ++i) {
      const Vec x = c.project(gaussian(c.dim(), rng));
      if (x.norm() < 1e-6) continue;
      const Derivation d = facial_derivative(c, face_of(c, x));
      EXPECT_TRUE(is_derivation(c, d.mat).verified()) << c.name();
      EXPECT_TRUE(flow_preserves(c, d.mat, rng)) << c.name();
    }
}

TEST(Face, Incomparability) {
  const ConeSpace c = ConeSpace::orthant(3);
  EXPECT_TRUE(incomparable(c, Vec::Unit(3, 0), Vec::Unit(3, 1)));
  EXPECT_FALSE(incomparable(c, Vec::Unit(3, 0), Vec::Ones(3)));
  const ConeSpace l = ConeSpace::lorentz(3);
  EXPECT_TRUE(incomparable(l, (Vec(3) << 1, 1, 0).finished(), (Vec(3) << 1, -1, 0).finished()));
}

TEST(FaceProperty, MinimalDecompositionReconstructs) {
  std::mt19937_64 rng(8);
  auto cones = canonical();
  cones.push_back(wedge());
  for (const ConeSpace& c : cones)
    for (int i = 0; i < 50; ++i) {
      const Vec a = c.project(gaussian(c.dim(), rng)) + 0.1 * c.unit();
      const MinimalDecomposition md = minimal_decomposition(c, a);
      EXPECT_LT((md.sum(c.dim()) - a).norm(), 1e-9 * (1 + a.norm())) << c.name();
      for (std::size_t p = 0; p < md.components.size(); ++p) {
        EXPECT_TRUE(is_minimal(c, md.components[p].atom)) << c.name();
        for (std::size_t q = p + 1; q < md.components.size(); ++q)
          if (c.is_self_dual()) EXPECT_TRUE(incomparable(c, md.components[p].atom, md.components[q].atom));
      }
    }
  const MinimalDecomposition sq = minimal_decomposition(square_cone(), square_cone().unit());
  EXPECT_TRUE(sq.single_block);
}

TEST(Face, FacialHomogeneity) {
  EXPECT_TRUE(is_facially_homogeneous(ConeSpace::orthant(3)).verdict.verified());
  EXPECT_TRUE(is_facially_homogeneous(ConeSpace::lorentz(3)).verdict.verified());
  EXPECT_TRUE(is_facially_homogeneous(ConeSpace::psd_real(2)).verdict.verified());
  const FacialHomogeneity w = is_facially_homogeneous(wedge());
  EXPECT_TRUE(w.verdict.refuted());
  EXPECT_FALSE(w.face.is_zero());
}

TEST(Face, RieszWitnessesAreGenuine) {
  EXPECT_TRUE(is_riesz(ConeSpace::orthant(3)).riesz);
  EXPECT_TRUE(is_riesz(wedge()).riesz);
  EXPECT_FALSE(is_riesz(square_cone()).riesz);
  for (const ConeSpace& c : {ConeSpace::psd_real(2), ConeSpace::lorentz(3), ConeSpace::hermitian(2)}) {
    const RieszReport r = is_riesz(c);
    ASSERT_FALSE(r.riesz) << c.name();
    // x is in the face of a + c but outside span(face(a)) + span(face(c)).
    const Face fa = face_of(c, r.a), fc = face_of(c, r.c), fs = face_of(c, r.a + r.c);
    EXPECT_TRUE(fs.contains(c, r.x, 1e-9));
    Mat both(c.dim(), 2 * c.dim());
    both << fa.projector, fc.projector;
    EXPECT_GT((r.x - projector_onto_span(both) * r.x).norm(), 1e-6) << c.name();
  }
}

// ---------------------------------------------------------------------------
// Spectral faces

TEST(SpectralProperty, ReconstructionIsIdentity) {
  std::mt19937_64 rng(9);
  for (const ConeSpace& c : canonical())
    for (int i = 0; i < 30; ++i) {
      const Derivation d = random_selfadjoint(c, rng);
      const SpectralFaceFamily fam = spectral_faces(c, d);
      for (std::size_t k = 1; k < fam.entries.size(); ++k) EXPECT_LT(fam.entries[k - 1].lambda, fam.entries[k].lambda);
      EXPECT_LT(operator_norm(reconstruct_from_faces(c, fam).mat - d.mat), 1e-9) << c.name();
    }
}

TEST(Spectral, ZeroFaceOfDiagonalMultiplier) {
  const ConeSpace psd = ConeSpace::psd_real(2);
  Mat l = Mat::Zero(2, 2);
  l(1, 1) = 1.0;
  const Derivation d = Derivation::of(matrix_of(3, [&](const Vec& e) {
    const Mat x = smat(e, 2);
    return svec(l * x + x * l);
  }));
  const SpectralFaceFamily fam = spectral_faces(psd, d);
  ASSERT_EQ(fam.entries.size(), 3u);
  EXPECT_TRUE(fam.entries[1].face.is_zero());
  EXPECT_LT(operator_norm(reconstruct_from_faces(psd, fam).mat - d.mat), 1e-9);
}

TEST(Spectral, PolyhedralSelfAdjointDerivation) {
  const ConeSpace c = ConeSpace::orthant(3);
  const Derivation d = Derivation::of((Vec(3) << 2, -1, 2).finished().asDiagonal().toDenseMatrix());
  const SpectralFaceFamily fam = spectral_faces(c, d);
  ASSERT_EQ(fam.entries.size(), 2u);
  EXPECT_EQ(fam.entries[1].face.dimension(), 2);
}

TEST(Spectral, RejectsNonDerivations) {
  const ConeSpace c = ConeSpace::psd_real(2);
  Mat m = Mat::Zero(3, 3);
  m(0, 2) = m(2, 0) = 1.0;
  EXPECT_THROW(spectral_faces(c, Derivation::of(m)), NotADerivation);
  Mat skew = Mat::Zero(3, 3);
  skew(0, 1) = 1.0;
  skew(1, 0) = -1.0;
  EXPECT_THROW(spectral_faces(c, Derivation::of(skew)), NotADerivation);
}

// ---------------------------------------------------------------------------
// Vector ratios

TEST(Ratio, PsdEigenvalueMultipliers) {
  const ConeSpace psd = ConeSpace::psd_real(2);
  Mat a1(2, 2);
  a1 << 2, 1, 1, 2;
  const Ratio r = ratio_from_pair(psd, svec(a1), psd.unit());
  ASSERT_EQ(r.components.size(), 2u);
  std::vector<Fraction> lambdas;
  for (const auto& c : r.components) {
    EXPECT_TRUE(c.bracket.exact);
    lambdas.push_back(c.bracket.lo);
  }
  std::sort(lambdas.begin(), lambdas.end());
  EXPECT_EQ(lambdas[0], Fraction(1));
  EXPECT_EQ(lambdas[1], Fraction(3));
  const Mat d = to_derivation(r).mat;
  const Mat want = matrix_of(3, [&](const Vec& e) {
    const Mat x = smat(e, 2);
    return svec(0.5 * (a1 * x + x * a1));
  });
  EXPECT_LT((d - want).norm(), 1e-12);
}

TEST(Ratio, Preconditions) {
  const ConeSpace c = ConeSpace::orthant(3);
  EXPECT_THROW(ratio_from_pair(c, Vec::Ones(3), Vec::Unit(3, 0)), NotAnOrderUnit);
  EXPECT_THROW(ratio_from_pair(c, Vec::Ones(2), Vec::Ones(3)), DimensionMismatch);
  const ConeSpace psd = ConeSpace::psd_real(2);
  Mat a(2, 2), a1(2, 2);
  a << 2, 0, 0, 1;
  a1 << 1, 1, 1, 1;
  EXPECT_THROW(ratio_from_pair(psd, svec(a1), svec(a)), NotComparable);
  EXPECT_THROW(to_derivation(ratio_from_pair(wedge(), (Vec(2) << 2, 1).finished(), (Vec(2) << 2, 1).finished())),
               Unsupported);
}

TEST(RatioProperty, EqualityIsInvariantUnderScaling) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (const ConeSpace& c : canonical())
    for (int i = 0; i < 20; ++i) {
      std::vector<Vec> frame = c.jordan()->random_frame(rng);
      Vec a = Vec::Zero(c.dim()), a1 = Vec::Zero(c.dim());
      for (const Vec& e : frame) {
        a += u(rng) * e;
        a1 += u(rng) * e;
      }
      const Ratio r = ratio_from_pair(c, a1, a);
      const double k = std::ldexp(1.0, static_cast<int>(i % 5) - 2);
      const Ratio s = ratio_from_pair(c, k * a1, k * a);
      const EqualityVerdict v = ratio_equality(r, s);
      EXPECT_TRUE(v.equal);
      EXPECT_TRUE(v.variants_agree());
      const Ratio t = ratio_from_pair(c, 1.5 * a1, a);
      EXPECT_FALSE(ratio_equal(r, t));
    }
}

TEST(RatioProperty, ComposeAndAddOnTheOrthant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  const ConeSpace c = ConeSpace::orthant(3);
  for (int i = 0; i < 20; ++i) {
    Vec a(3), a1(3), b(3), b1(3);
    for (int j = 0; j < 3; ++j) a(j) = u(rng), a1(j) = u(rng), b(j) = u(rng), b1(j) = u(rng);
    const Ratio r = ratio_from_pair(c, a1, a), s = ratio_from_pair(c, b1, b);
    const ComposeResult rs = compose(r, s);
    ASSERT_FALSE(rs.jb_only);
    ASSERT_TRUE(rs.ratio.has_value());
    const Vec want = a1.cwiseQuotient(a).cwiseProduct(b1.cwiseQuotient(b));
    EXPECT_LT((rs.derivation.mat.diagonal() - want).norm(), 1e-9);
    EXPECT_TRUE(ratio_equal(*rs.ratio, *compose(s, r).ratio));
    const Ratio sum = add(r, s);
    EXPECT_LT((to_derivation(sum).mat.diagonal() - (a1.cwiseQuotient(a) + b1.cwiseQuotient(b))).norm(), 1e-9);
  }
}

TEST(Ratio, NoncommutingCompositionFallsBackToJordanProduct) {
  const ConeSpace l = ConeSpace::lorentz(3);
  const Ratio r = ratio_from_pair(l, (Vec(3) << 1, 0.5, 0).finished(), l.unit());
  const Ratio s = ratio_from_pair(l, (Vec(3) << 1, 0, 0.5).finished(), l.unit());
  const ComposeResult c = compose(r, s);
  EXPECT_TRUE(c.jb_only);
  EXPECT_FALSE(c.ratio.has_value());
  EXPECT_LT((c.derivation.mat - jordan_compose(s, r).mat).norm(), 1e-12);
}

TEST(Ratio, ArchimedesOnTheOrthant) {
  const ConeSpace c = ConeSpace::orthant(2);
  const ArchimedesResult r = archimedes_check(c, (Vec(2) << 1, 2).finished(), (Vec(2) << 7, 3).finished(), 100);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.n, 7);
  EXPECT_FALSE(archimedes_check(c, (Vec(2) << 1, 0).finished(), (Vec(2) << 1, 1).finished(), 1000).holds);
}

TEST(Ratio, VectorIterationAndFractions) {
  const Vec a = (Vec(2) << 1.5, -2).finished();
  EXPECT_LT((iterate(BigInt(6), a) - 6 * a).norm(), 1e-12);
  EXPECT_LT((apply_fraction(Fraction(3, 4), a) - 0.75 * a).norm(), 1e-12);
  EXPECT_THROW(iterate(BigInt(0), a), std::invalid_argument);
}

TEST(RatioProperty, SpectralSumOperatorsDecreaseUnderRefinement) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const ConeSpace c = ConeSpace::orthant(4);
  for (int i = 0; i < 20; ++i) {
    Vec a(4), a1(4);
    for (int j = 0; j < 4; ++j) a(j) = u(rng), a1(j) = u(rng);
    auto part = [&](std::initializer_list<int> idx) {
      Vec p = Vec::Zero(4);
      for (int k : idx) p(k) = a(k);
      return p;
    };
    const Mat coarse = spectral_sum_operator(c, {a}, a1);
    const Mat mid = spectral_sum_operator(c, {part({0, 1}), part({2, 3})}, a1);
    const Mat fine = spectral_sum_operator(c, {part({0}), part({1}), part({2}), part({3})}, a1);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Mat>(coarse - mid).eigenvalues()(0), -1e-9);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Mat>(mid - fine).eigenvalues()(0), -1e-9);
    EXPECT_NEAR(coarse(0, 0), a1.cwiseQuotient(a).maxCoeff(), 1e-9);
    EXPECT_LT((fine.diagonal() - a1.cwiseQuotient(a)).norm(), 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Krein spaces

TEST(Krein, OrthantAxiomsHold) {
  const ConeSpace c = ConeSpace::orthant(3);
  for (const AxiomResult& r : check_axioms(c, c.unit())) EXPECT_TRUE(r.pass) << r.axiom << " " << r.detail;
}

TEST(Krein, LorentzHasNoLeastUpperBounds) {
  const ConeSpace c = ConeSpace::lorentz(3);
  for (const AxiomResult& r : check_axioms(c, c.unit())) {
    if (r.axiom == "III") {
      ASSERT_FALSE(r.pass);
      // The witness is an upper bound of 0 and x that is not above the candidate.
      EXPECT_TRUE(c.contains(r.witness));
      EXPECT_TRUE(c.leq(r.x, r.witness));
      EXPECT_FALSE(c.leq(c.project(r.x), r.witness));
    } else {
      EXPECT_TRUE(r.pass) << r.axiom;
    }
  }
}

TEST(Krein, CanonicalProductHasUnitIdentity) {
  const ConeSpace c = ConeSpace::orthant(3);
  const Vec u = (Vec(3) << 2, 1, 0.5).finished();
  const KreinSpace e(c, u);
  const Vec x = (Vec(3) << 1, -2, 3).finished();
  EXPECT_LT((e.product(u, x) - x).norm(), 1e-12);
  EXPECT_LT((e.product(x, x) - (Vec(3) << 0.5, 4, 18).finished()).norm(), 1e-12);
  EXPECT_NEAR(e.norm(x), 6.0, 1e-12);
  EXPECT_THROW(KreinSpace(c, Vec::Unit(3, 0)), NotAnOrderUnit);
  EXPECT_THROW(KreinSpace(ConeSpace::lorentz(3)).product(Vec::Ones(3), Vec::Ones(3)), Unsupported);
}

TEST(Krein, PureStatesAreMultiplicative) {
  for (int n = 1; n <= 5; ++n) {
    const KreinSpace e(ConeSpace::orthant(n));
    const PureStates ps = pure_states(e);
    ASSERT_EQ(ps.states.size(), static_cast<std::size_t>(n));
    for (const State& s : ps.states) {
      EXPECT_TRUE(multiplicative_characterization(e, s, 0.0).holds);
      EXPECT_NEAR(s.functional.dot(e.unit()), 1.0, 1e-15);
      EXPECT_NEAR(functional_norm(e, s), 1.0, 1e-12);
    }
    if (n >= 2) {
      const State mid{0.5 * (ps.states[0].functional + ps.states[1].functional)};
      const MultiplicativeResult m = multiplicative_characterization(e, mid);
      EXPECT_FALSE(m.holds);
      EXPECT_NE(mid.functional.dot(e.product(m.x, m.y)), mid.functional.dot(m.x) * mid.functional.dot(m.y));
    }
  }
}

TEST(KreinProperty, GelfandMapIsIsometric) {
  std::mt19937_64 rng(13);
  const KreinSpace e(ConeSpace::orthant(4), (Vec(4) << 1, 2, 3, 0.5).finished());
  for (int i = 0; i < 200; ++i) {
    const Vec x = gaussian(4, rng);
    EXPECT_NEAR(gelfand_map(e, x).cwiseAbs().maxCoeff(), e.norm(x), 1e-9 * (1 + x.norm()));
  }
}

TEST(Krein, PolyhedralPureStatesAreFacets) {
  const KreinSpace e(square_cone());
  const PureStates ps = pure_states(e);
  EXPECT_TRUE(ps.exact);
  EXPECT_EQ(ps.states.size(), 4u);
}
