#include <gtest/gtest.h>

#include "qmes/generate.h"
#include "qmes/seed.h"

namespace qmes {
namespace {

SeedParams seed235() { return SeedParams{2.0, 3.0, 5.0}.canonical(); }

TEST(Seed, BasisAmplitudes) {
  const Ket27 ghz = build_seed({1.0, 0.0, 0.0});
  for (int i = 0; i < 27; ++i) {
    const bool on = i == ket_index(0, 0, 0) || i == ket_index(1, 1, 1) || i == ket_index(2, 2, 2);
    EXPECT_EQ(ghz(i), Complex(on ? 1.0 : 0.0)) << i;
  }
  const Ket27 cyc = build_seed({0.0, 1.0, 0.0});
  EXPECT_EQ(cyc(ket_index(0, 1, 2)), Complex(1.0));
  EXPECT_EQ(cyc(ket_index(2, 0, 1)), Complex(1.0));
  EXPECT_EQ(cyc(ket_index(1, 2, 0)), Complex(1.0));
  EXPECT_NEAR(cyc.squaredNorm(), 3.0, 1e-15);

  const Ket27 v = build_seed(seed235());
  int nonzero = 0;
  for (int i = 0; i < 27; ++i) nonzero += std::abs(v(i)) > 0;
  EXPECT_EQ(nonzero, 9);
  EXPECT_NEAR(v.squaredNorm(), 3.0, 1e-14);
}

TEST(Seed, CanonicalGauge) {
  const SeedParams p = SeedParams{Complex(0, 2), 1.0, -1.0}.canonical();
  EXPECT_TRUE(p.is_canonical());
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.a.imag(), 0.0, 1e-15);
  EXPECT_GT(p.a.real(), 0.0);
  EXPECT_THROW(SeedParams({0.0, 0.0, 0.0}).canonical(), DomainError);
}

TEST(Seed, Genericity) {
  const GenericityReport sym = check_generic(SeedParams{1.0, 1.0, 1.0}.canonical());
  EXPECT_FALSE(sym.generic);
  bool saw_a9_b9 = false;
  for (const auto& v : sym.violations) saw_a9_b9 |= v.name == "a^9 = b^9";
  EXPECT_TRUE(saw_a9_b9);
  EXPECT_EQ(sym.conditions.size(), 22u);

  EXPECT_FALSE(check_generic({1.0, 0.0, 0.0}).generic);

  const GenericityReport r = check_generic(seed235());
  EXPECT_TRUE(r.generic);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GT(r.margin, 1e-3);
}

TEST(Seed, PauliTriplesAreSymmetries) {
  const SeedParams p = seed235();
  EXPECT_LE(symmetry_residual(Mat3::Identity(), Mat3::Identity(), Mat3::Identity(), p), 1e-15);
  EXPECT_LE(verify_symmetries(p), 1e-10);
  // Frozen from numpy: ||X (x) I (x) I psi - psi|| / ||psi|| = sqrt(2).
  EXPECT_NEAR(symmetry_residual(pauli({1, 0}), Mat3::Identity(), Mat3::Identity(), p), std::sqrt(2.0), 1e-12);
}

TEST(Seed, PhiStatesAreOrthogonalToTheSeed) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    std::normal_distribution<double> n;
    const SeedParams p{Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
    for (const auto& v : phi_contractions(Mat3::Identity(), Mat3::Identity(), p)) EXPECT_LE(v.norm(), 1e-12);
  }
  const SeedParams p = seed235();
  const auto phi = phi_states(p);
  // The first listed vector, c*|12> - b*|21>.
  EXPECT_EQ(phi[0](3 * 1 + 2), std::conj(p.c));
  EXPECT_EQ(phi[0](3 * 2 + 1), -std::conj(p.b));
  EXPECT_EQ(phi[0].cwiseAbs().sum(), std::abs(p.b) + std::abs(p.c));

  const auto equal_bc = phi_states({0.6, 0.8, 0.8});
  EXPECT_LE(std::abs(equal_bc[0](5) + equal_bc[0](7)), 1e-14);
}

TEST(Seed, ProjectionResidual) {
  const SeedParams p = seed235();
  EXPECT_LE(projection_residual(Mat3::Identity(), Mat3::Identity(), p), 1e-14);
  EXPECT_LE(projection_residual(pauli({1, 0}), pauli({1, 0}), p), 1e-12);
  Rng rng(5);
  EXPECT_GT(projection_residual(random_unitary(rng), random_unitary(rng), p), 1e-2);
}

TEST(Seed, AppendixMatrices) {
  const SeedParams p = seed235();
  const AppendixMatrices mi = build_appendix_Mi(Mat3::Identity(), p);
  EXPECT_EQ(mi.m[0](0, 0), p.a);
  const AppendixMatrices mx = build_appendix_Mi(pauli({1, 0}), p);
  for (int i = 0; i < 3; ++i) {
    int nonzero = 0;
    for (int e = 0; e < 9; ++e) nonzero += std::abs(mx.m[i](e / 3, e % 3)) > 0;
    EXPECT_EQ(nonzero, 3);
    EXPECT_GT(std::abs(mx.m[i].determinant()), 1e-6);
  }
  Rng rng(7);
  const Mat3 b = random_unitary(rng);
  const AppendixMatrices mb = build_appendix_Mi(b, p);
  for (int i = 0; i < 3; ++i) EXPECT_LE((appendix_adjugate(b, i, p) - adjugate(mb.m[i])).norm(), 1e-12);
}

TEST(Seed, CandidateSets) {
  EXPECT_EQ(monomial_candidates().size(), 54u);
  EXPECT_EQ(dense_candidates().size(), 162u);
  for (PauliIndex k : kPauliOrder) {
    const auto m = match_pauli(Complex(0, 2) * pauli(k));
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(*m, k);
  }
}

TEST(Seed, AuditFindsExactlyTheNinePauliPairs) {
  const AuditReport r = symmetry_audit(seed235());
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.survivors.size(), 9u);
  EXPECT_TRUE(r.surplus.empty());
  for (const auto& s : r.survivors) {
    EXPECT_TRUE(s.pauli.has_value());
    EXPECT_LE(s.full_symmetry_residual, 1e-10);
  }
  EXPECT_GT(r.rejection_margin, 1e-6);
  EXPECT_THROW(symmetry_audit(SeedParams{1.0, 1.0, 0.5}.canonical()), DomainError);
}

}  // namespace
}  // namespace qmes
