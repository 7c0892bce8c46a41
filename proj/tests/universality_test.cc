#include "aht/universality.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <unordered_set>

#include <gtest/gtest.h>

#include "aht/code.h"
#include "aht/error.h"
#include "aht/pauli.h"
#include "test_util.h"

namespace aht {
namespace {

const Complex kI(0, 1);

Operator X() { return sigma(1, 'X', 1); }
Operator Y() { return sigma(1, 'Y', 1); }
Operator Z() { return sigma(1, 'Z', 1); }

TEST(LieClosureTest, Examples) {
  EXPECT_EQ(lie_closure({kI * X()}, 16).dimension, 1);
  const LieBasis su2 = lie_closure({kI * X(), kI * Y()}, 16);
  EXPECT_EQ(su2.dimension, 3);
  EXPECT_FALSE(su2.truncated);
  EXPECT_EQ(universality_verdict(su2), "su(2)");
  EXPECT_THROW(lie_closure({X()}, 4), ValidationError);
}

TEST(LieClosureTest, BasisIsOrthonormalAndClosed) {
  std::mt19937_64 rng(20);
  const LieBasis l = lie_closure({kI * test::random_hermitian(2, rng, true),
                                  kI * test::random_hermitian(2, rng, true)},
                                 32);
  EXPECT_EQ(l.dimension, 15);
  EXPECT_EQ(universality_verdict(l), "su(4)");
  for (std::size_t i = 0; i < l.basis.size(); ++i)
    for (std::size_t j = 0; j < l.basis.size(); ++j)
      EXPECT_NEAR(inner_product(l.basis[i], l.basis[j]).real(),
                  i == j ? 1.0 : 0.0, 1e-10);
  EXPECT_LT(closure_defect(l), 1e-8);
}

TEST(LieClosureTest, TruncationIsReported) {
  const LieBasis l = lie_closure({kI * X(), kI * Y()}, 2);
  EXPECT_EQ(l.dimension, 2);
  EXPECT_TRUE(l.truncated);
  EXPECT_FALSE(lie_closure({kI * X(), kI * Y()}, 3).truncated);
}

TEST(LieClosureTest, Ns3LogicalPairIsUniversal) {
  const Operator h = ns3_logical_hamiltonian(0.0, 1.0, 0.3, -0.6);
  const Operator pi_x = expm(X(), std::numbers::pi / 2);
  const Operator hs = project_group(h, make_group({Operator::identity(2), pi_x}));
  const LieBasis l = lie_closure({kI * h, kI * hs}, 8);
  EXPECT_EQ(l.dimension, 3);
}

TEST(LieClosurePropertyTest, InvariantUnderOrderAndConjugation) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator a = test::random_hermitian(2, rng, true);
    const Operator b = Operator::hermitian(
        (sigma(2, 'Z', 1) + 0.5 * sigma(2, 'X', 1)).matrix());
    const Operator u = test::random_unitary(2, rng);
    const int d1 = lie_closure({kI * a, kI * b}, 32).dimension;
    const int d2 = lie_closure({kI * b, kI * a}, 32).dimension;
    const int d3 =
        lie_closure({kI * conjugate(a, u), kI * conjugate(b, u)}, 32).dimension;
    EXPECT_EQ(d1, d2);
    EXPECT_EQ(d1, d3);
  }
}

TEST(CpSplitTest, Examples) {
  const CpSplit s = cp_split(Z() + X(), X());
  EXPECT_LT(distance(s.symmetric, X()), 1e-15);
  EXPECT_LT(distance(s.antisymmetric, Z()), 1e-15);
  const CpSplit inv = cp_split(2.0 * X(), expm(X(), std::numbers::pi / 2));
  EXPECT_LT(inv.antisymmetric.max_abs(), 1e-15);
  EXPECT_THROW(cp_split(Z(), expm(X(), 0.3)), ValidationError);
}

TEST(CpSplitTest, NonCommutingPartsGenerateSu2) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator h = test::random_hermitian(1, rng, true);
    const CpSplit s = cp_split(h, X());
    ASSERT_GT(commutator(s.symmetric, s.antisymmetric).max_abs(), 1e-6);
    EXPECT_GE(lie_closure({kI * h, kI * s.symmetric}, 8).dimension, 3);
    EXPECT_LT(distance(s.symmetric + s.antisymmetric, h), 1e-15);
    EXPECT_NEAR(std::abs(inner_product(s.symmetric, s.antisymmetric)), 0.0,
                1e-14);
    EXPECT_LT(distance(s.symmetric, project_group(h, builtin_group("cp_x", 1))),
              1e-15);
  }
}

TEST(GroupGenerationTest, Examples) {
  EXPECT_EQ(generate_group({X()}, 8).size(), 2);
  EXPECT_EQ(generate_group({Operator::identity(2)}, 8).size(), 1);
  EXPECT_THROW(generate_group({expm(X(), 0.1)}, 50), ValidationError);
}

TEST(GroupGenerationTest, TransformerOrders) {
  const auto gens = transformer_generators();
  // Brute force: every word of length <= 6 in the generators lands in the
  // closure, and the closure has 24 distinct matrices, 12 up to phase.
  const DecouplingSet exact = transformer_group();
  EXPECT_EQ(exact.size(), 24);
  EXPECT_EQ(generate_group(gens, 64, PhaseMode::modulo_phase).size(), 12);
  std::unordered_set<std::string> keys;
  for (const auto& f : exact.frames) keys.insert(exact_key(f.matrix()));
  std::vector<Matrix> words = {Matrix::Identity(2, 2)};
  for (int len = 0; len < 6; ++len) {
    std::vector<Matrix> next;
    for (const auto& w : words)
      for (const auto& g : gens) next.push_back(w * g.matrix());
    for (const auto& w : next) EXPECT_TRUE(keys.contains(exact_key(w)));
    words = std::move(next);
  }
  // Frames are closed under products exactly.
  for (const auto& a : exact.frames)
    for (const auto& b : exact.frames)
      EXPECT_TRUE(keys.contains(exact_key(a.matrix() * b.matrix())));
}

TEST(ReachTest, Examples) {
  const DecouplingSet tg = transformer_group();
  const ReachResult r = transformer_reach(tg, Z(), X());
  EXPECT_TRUE(r.reachable);
  EXPECT_GT(r.scale, 0);

  const ReachResult cp = transformer_reach(builtin_group("cp_x", 1), Z(), X());
  EXPECT_FALSE(cp.reachable);

  const ReachResult self = transformer_reach(tg, Z() + 0.2 * Y(), Z() + 0.2 * Y());
  EXPECT_TRUE(self.reachable);
  EXPECT_DOUBLE_EQ(self.scale, 1.0);
  EXPECT_EQ(self.weights[0], 1.0);  // identity element

  EXPECT_THROW(transformer_reach(tg, Operator::zero(2), X()), ValidationError);
  EXPECT_THROW(transformer_reach(tg, X(), Operator::zero(2)), ValidationError);
}

void expect_solution(const DecouplingSet& g, const Operator& a,
                     const Operator& target, const ReachResult& r) {
  ASSERT_TRUE(r.reachable);
  double total = 0;
  Operator avg = Operator::zero(a.dim());
  for (std::size_t k = 0; k < r.weights.size(); ++k) {
    EXPECT_GE(r.weights[k], 0.0);
    total += r.weights[k];
    avg += r.weights[k] * conjugate(a, g.frames[k]);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LT(distance(avg, r.scale * target), 1e-8);
}

TEST(ReachPropertyTest, TransformerReachesRandomTargets) {
  std::mt19937_64 rng(23);
  const DecouplingSet tg = transformer_group();
  for (int trial = 0; trial < 50; ++trial) {
    Operator a = test::random_hermitian(1, rng, true);
    a *= 1.0 / a.frobenius_norm();
    const Operator target = test::random_hermitian(1, rng, true);
    expect_solution(tg, a, target, transformer_reach(tg, a, target));
  }
}

TEST(ReachPropertyTest, GroupProjectionLiesInCone) {
  std::mt19937_64 rng(24);
  for (const auto& name : builtin_group_names()) {
    const DecouplingSet g = builtin_group(name, 1);
    for (int trial = 0; trial < 5; ++trial) {
      const Operator a = test::random_hermitian(1, rng, true);
      const Operator p = project_group(a, g);
      if (p.frobenius_norm() < 1e-10) continue;
      const ReachResult r = transformer_reach(g, a, p);
      expect_solution(g, a, p, r);
    }
  }
}

TEST(NnlsTest, MatchesUnconstrainedWhenInterior) {
  Eigen::MatrixXd m(3, 2);
  m << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  const Eigen::VectorXd x = nnls(m, b);
  EXPECT_NEAR(x(0), 1, 1e-12);
  EXPECT_NEAR(x(1), 2, 1e-12);
  b << -1, 2, 1;
  const Eigen::VectorXd y = nnls(m, b);
  EXPECT_EQ(y(0), 0.0);
  EXPECT_NEAR(y(1), 1.5, 1e-12);
}

}  // namespace
}  // namespace aht
