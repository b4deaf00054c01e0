#include <gtest/gtest.h>

#include "qmes/classify.h"
#include "qmes/generate.h"
#include "qmes/sep.h"

namespace qmes {
namespace {

std::vector<PauliIndex> around(PauliIndex w) { return {PauliIndex{}, w, -w}; }

TEST(Sep, DepolarizationExamples) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Mat3 h = random_gram(rng, 0xF);
    EXPECT_LE((depolarize(h, uniform_p()) - Mat3::Identity() / 3.0).norm(), 1e-12);
    EXPECT_LE((depolarize(h, point_mass()) - h).norm(), 1e-15);
  }
  for (PauliIndex w : kPairRepresentatives) {
    const Mat3 h = random_gram(rng, pair_bit(w));
    EXPECT_LE((depolarize(h, uniform_on(around(w))) - h).norm(), 1e-12);
  }
}

TEST(Sep, EtaExamples) {
  const EtaVector uni = eta_from_p(uniform_p());
  EXPECT_LE(std::abs(uni(0) - 1.0), 1e-15);
  EXPECT_LE(coord_vector(uni).norm(), 1e-14);

  const EtaVector one = eta_from_p(point_mass());
  for (int p = 0; p < 9; ++p) EXPECT_LE(std::abs(one(p) - 1.0), 1e-15);

  for (PauliIndex w : kPairRepresentatives) {
    const EtaVector e = eta_from_p(uniform_on(around(w)));
    for (PauliIndex u : kPauliOrder) {
      const bool inside = u.is_zero() || u == w || u == -w;
      // Frozen from numpy: 1 on {0, +-w}, 0 elsewhere.
      EXPECT_NEAR(std::abs(e(u.position())), inside ? 1.0 : 0.0, 1e-14) << u;
    }
  }
}

TEST(Sep, EtaIsLinearAndBounded) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    ProbabilityVector p, q;
    for (int i = 0; i < 9; ++i) p(i) = u(rng), q(i) = u(rng);
    p /= p.sum();
    q /= q.sum();
    const EtaVector mix = eta_from_p(0.3 * p + 0.7 * q);
    EXPECT_LE((mix - 0.3 * eta_from_p(p) - 0.7 * eta_from_p(q)).norm(), 1e-13);
    const EtaVector e = eta_from_p(p);
    EXPECT_LE(std::abs(e(0) - 1.0), 1e-13);
    for (PauliIndex k : kPauliOrder) {
      EXPECT_LE(std::abs(e(k.position()) - std::conj(e((-k).position()))), 1e-13);
      EXPECT_LE(std::abs(e(k.position())), 1.0 + 1e-13);
    }
  }
}

TEST(Sep, EtaConditions) {
  Rng rng(3);
  const GramTriple disjoint = gram_from_operators(
      {random_gram(rng, pair_bit({1, 0})), random_gram(rng, pair_bit({0, 1})), Mat3::Identity() / 3.0});
  EXPECT_TRUE(check_eta_conditions(disjoint.coords, eta_from_p(uniform_p())).ok);

  const GramTriple dense =
      gram_from_operators({random_gram(rng, 0xF), random_gram(rng, 0xF), random_gram(rng, 0xF)});
  EXPECT_TRUE(check_eta_conditions(dense.coords, eta_from_p(point_mass())).ok);

  const GramTriple shared = gram_from_operators(
      {random_gram(rng, pair_bit({1, 0})), random_gram(rng, pair_bit({1, 0})), Mat3::Identity() / 3.0});
  const EtaCheck bad = check_eta_conditions(shared.coords, eta_from_p(uniform_p()));
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.violations.empty());
  EXPECT_GT(bad.max_violation, 1e-3);
}

TEST(Sep, InducedInitial) {
  Rng rng(4);
  const GenericState s = generate_state(StateKind::kDense, rng);
  const GramTriple h = gram(s);
  const GramTriple g_uni = induced_initial(h, uniform_p());
  for (const Mat3& G : g_uni.G) EXPECT_LE((G - Mat3::Identity() / 3.0).norm(), 1e-12);
  const GramTriple g_id = induced_initial(h, point_mass());
  for (int i = 0; i < 3; ++i) EXPECT_LE((g_id.G[i] - h.G[i]).norm(), 1e-14);

  const PauliIndex w{1, 1};
  const ProbabilityVector p = uniform_on(around(w));
  const EtaVector eta = eta_from_p(p);
  const GramTriple g_w = induced_initial(h, p);
  for (int i = 0; i < 3; ++i) {
    for (int u = 0; u < 9; ++u) EXPECT_LE(std::abs(g_w.coords[i](u) - eta(u) * h.coords[i](u)), 1e-13);
  }
}

TEST(Sep, IdentityTransformationIsTriviallyFeasible) {
  Rng rng(5);
  const GenericState s = generate_state(StateKind::kDense, rng);
  const SepFeasibility f = sep_feasible(make_instance(s, s));
  EXPECT_TRUE(f.feasible);
  ASSERT_TRUE(f.witness.has_value());
  EXPECT_NEAR((*f.witness)(0), 1.0, 1e-9);
  EXPECT_FALSE(f.nontrivial);
}

TEST(Sep, FromSeedToTilingFamilyIsUniqueAndUniform) {
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const GenericState target = generate_state(StateKind::kLemma3, rng);
    const SepFeasibility f = sep_feasible(make_instance(GenericState{target.seed}, target));
    EXPECT_TRUE(f.feasible);
    EXPECT_TRUE(f.unique);
    EXPECT_TRUE(f.nontrivial);
    EXPECT_EQ(f.affine_dim, 0);
    ASSERT_TRUE(f.witness.has_value());
    EXPECT_LE((*f.witness - uniform_p()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Sep, FromSeedToDenseIsInfeasible) {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const GenericState target = generate_state(StateKind::kDense, rng);
    const SepFeasibility f = sep_feasible(make_instance(GenericState{target.seed}, target));
    EXPECT_FALSE(f.feasible);
    EXPECT_FALSE(f.witness.has_value());
    EXPECT_EQ(f.affine_dim, -1);
  }
}

TEST(Sep, ResidualVanishesOnWitness) {
  Rng rng(8);
  const GenericState target = generate_state(StateKind::kCaseII, rng);
  const ReachSearch r = sep_reach_search(target.seed, gram(target));
  ASSERT_TRUE(r.found);
  EXPECT_LE(transformation_residual(r.predecessor, gram(target), r.p), 1e-10);
  EXPECT_TRUE(r.feasibility.nontrivial);
}

TEST(Sep, ReachSearchFailsForIsolatedTargets) {
  Rng rng(9);
  const GenericState target = generate_state(StateKind::kDense, rng);
  EXPECT_FALSE(sep_reach_search(target.seed, gram(target)).found);
  EXPECT_FALSE(sep_reach_search(target.seed, gram(GenericState{target.seed})).found);
  EXPECT_EQ(predecessor_candidates().size(), 5u);
}

TEST(Sep, SeedMismatchIsRejected) {
  Rng rng(10);
  const GenericState a = generate_state(StateKind::kDense, rng);
  const GenericState b = generate_state(StateKind::kDense, rng);
  EXPECT_THROW(make_instance(a, b), SeedMismatch);
}

}  // namespace
}  // namespace qmes
