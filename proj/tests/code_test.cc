#include "aht/code.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "aht/error.h"
#include "test_util.h"

namespace aht {
namespace {

using std::numbers::pi;

Operator logical_pauli(const std::string& word) {
  return PauliString(word).to_operator();
}

void expect_code_invariants(const Code& c) {
  SCOPED_TRACE(c.name);
  const int d = c.code_dim();
  ASSERT_EQ(c.isometry.rows(), c.physical_dim());
  ASSERT_EQ(c.isometry.cols(), d);
  EXPECT_LT((c.isometry.adjoint() * c.isometry - Matrix::Identity(d, d))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  const Matrix p = c.projector();
  for (const auto& [key, op] : c.logical_observables) {
    EXPECT_TRUE(op.is_hermitian());
    EXPECT_LT((op.matrix() * p - p * op.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
  const Matrix id_z = Matrix::Identity(c.syndrome_dim, c.syndrome_dim);
  const char letters[3] = {'X', 'Y', 'Z'};
  for (int q = 1; q <= c.logical_qubits; ++q) {
    for (int a = 0; a < 3; ++a) {
      // Restriction is exactly sigma_a on logical qubit q.
      std::string word(c.logical_qubits, 'I');
      word[q - 1] = letters[a];
      const Matrix expected = kron(logical_pauli(word).matrix(), id_z);
      EXPECT_LT((c.restrict(c.observable(static_cast<Axis>(a), q)) - expected)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
      // Pauli algebra: sigma_a sigma_b = i eps_abc sigma_c on the code.
      for (int b = 0; b < 3; ++b) {
        const Matrix prod = c.restrict(c.observable(static_cast<Axis>(a), q) *
                                       c.observable(static_cast<Axis>(b), q));
        Matrix want;
        if (a == b) {
          want = Matrix::Identity(d, d);
        } else {
          const int k = 3 - a - b;
          const double eps = ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
          std::string wk(c.logical_qubits, 'I');
          wk[q - 1] = letters[k];
          want = Complex(0, eps) * kron(logical_pauli(wk).matrix(), id_z);
        }
        // Equality up to identity terms on the code.
        Matrix diff = prod - want;
        diff.diagonal().array() -= diff.trace() / static_cast<double>(d);
        EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
  // Observables on different logical qubits commute; x and z anticommute.
  for (int q = 1; q <= c.logical_qubits; ++q) {
    const Matrix x = c.restrict(c.observable(Axis::x, q));
    const Matrix z = c.restrict(c.observable(Axis::z, q));
    EXPECT_LT((x * z + z * x).cwiseAbs().maxCoeff(), 1e-10);
    for (int r = q + 1; r <= c.logical_qubits; ++r)
      for (Axis a : {Axis::x, Axis::y, Axis::z})
        for (Axis b : {Axis::x, Axis::y, Axis::z}) {
          const Operator comm =
              commutator(c.observable(a, q), c.observable(b, r));
          EXPECT_LT((c.restrict(comm)).cwiseAbs().maxCoeff(), 1e-10);
        }
  }
}

TEST(CodeTest, BuiltinInvariants) {
  for (const auto& name : builtin_code_names())
    expect_code_invariants(build_code(name));
  EXPECT_THROW(build_code("steane"), ValidationError);
}

TEST(CodeTest, Dfs2Structure) {
  const Code c = build_code("dfs2");
  EXPECT_EQ(c.logical_dim, 2);
  EXPECT_EQ(std::abs(c.isometry(1, 0)), 1.0);  // |01>
  EXPECT_EQ(std::abs(c.isometry(2, 1)), 1.0);  // |10>
  EXPECT_LT((collective(2, 'Z').matrix() * c.projector()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(CodeTest, Dfs2x2InsideZeroQuantumSubspace) {
  const Code c = build_code("dfs2x2");
  EXPECT_EQ(c.logical_dim, 4);
  EXPECT_EQ(c.syndrome_dim, 1);
  // The zero-quantum subspace of four spins has dimension C(4,2) = 6.
  const auto ev = eigenvalues_hermitian(collective(4, 'Z'));
  int zero_quantum = 0;
  for (double e : ev) zero_quantum += std::abs(e) < 1e-12;
  EXPECT_EQ(zero_quantum, 6);
  EXPECT_LT((collective(4, 'Z').matrix() * c.isometry).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(CodeTest, Ns3CollectiveOperatorsActOnSyndromeOnly) {
  const Code c = build_code("ns3");
  EXPECT_EQ(c.logical_dim, 2);
  EXPECT_EQ(c.syndrome_dim, 2);
  for (char a : {'X', 'Y', 'Z'}) {
    const LogicalAction act = logical_action(collective(3, a), c);
    EXPECT_TRUE(act.preserves_code);
    EXPECT_LT(act.logical_part.max_abs(), 1e-12) << a;
    EXPECT_FALSE(act.syndrome_norm < 1e-6) << a;  // S_a acts on the doublet
  }
}

TEST(CodeTest, Ns3ExchangeOracle) {
  const Code c = build_code("ns3");
  const LogicalAction act = logical_action(exchange(3, 1, 2), c);
  EXPECT_TRUE(act.preserves_code);
  EXPECT_LT(distance(act.logical_part, 2.0 * logical_pauli("X")), 1e-12);
  EXPECT_NEAR(act.identity_offset, -1.0, 1e-12);
  EXPECT_FALSE(act.syndrome_nontrivial);
}

TEST(CodeTest, Ns3ExchangeOracleFromExplicitStates) {
  // Independent construction: SWAP_12 has eigenvalue -1 on the singlet-based
  // doublet and +1 on the other, so s12 = 2 SWAP - 1 has spectrum {-3, 1} on
  // the J = 1/2 space, i.e. eigenvalues -1 +- 2 of 2 sigma_x - 1.
  const Code c = build_code("ns3");
  const Operator r(c.restrict(exchange(3, 1, 2)));
  const auto ev = eigenvalues_hermitian(r);
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_NEAR(ev[0], -3, 1e-12);
  EXPECT_NEAR(ev[1], -3, 1e-12);
  EXPECT_NEAR(ev[2], 1, 1e-12);
  EXPECT_NEAR(ev[3], 1, 1e-12);
}

TEST(CodeTest, Ns3SymmetricHamiltonianActsTrivially) {
  const Code c = build_code("ns3");
  const LogicalAction act =
      logical_action(ns3_physical_hamiltonian(0.7, 1.3, 1.3, 1.3), c);
  EXPECT_LT(act.logical_part.max_abs(), 1e-12);
  // Omega S_z survives on the syndrome factor; it is reported.
  EXPECT_TRUE(act.syndrome_nontrivial);
}

TEST(CodeTest, Ns3ClosedFormExamples) {
  EXPECT_LT(ns3_logical_hamiltonian(5.0, 2.0, 2.0, 2.0).max_abs(), 1e-15);
  EXPECT_LT(distance(ns3_logical_hamiltonian(0, 1, 0, 0),
                     2.0 * logical_pauli("X")),
            1e-15);
  EXPECT_LT(distance(ns3_logical_hamiltonian(0, 0, 0, 1),
                     -1.0 * logical_pauli("X") +
                         std::sqrt(3.0) * logical_pauli("Y")),
            1e-15);
}

TEST(CodeTest, Ns3ClosedFormMatchesRestriction) {
  const Code c = build_code("ns3");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double om = u(rng), j12 = u(rng), j23 = u(rng), j31 = u(rng);
    const LogicalAction act =
        logical_action(ns3_physical_hamiltonian(om, j12, j23, j31), c);
    EXPECT_TRUE(act.preserves_code);
    EXPECT_LT(distance(act.logical_part,
                       ns3_logical_hamiltonian(om, j12, j23, j31)),
              1e-10);
  }
}

TEST(CodeTest, Dfs2ErrorGenerators) {
  const Code c = build_code("dfs2");
  const LogicalAction z1 = logical_action(sigma(2, 'Z', 1), c);
  const LogicalAction z2 = logical_action(sigma(2, 'Z', 2), c);
  EXPECT_LT(distance(z1.logical_part, logical_pauli("Z")), 1e-15);
  EXPECT_LT(distance(z2.logical_part, -1.0 * logical_pauli("Z")), 1e-15);
  EXPECT_EQ(z1.identity_offset, 0.0);
  EXPECT_TRUE(z1.preserves_code);
}

TEST(CodeTest, LeakageIsReported) {
  const Code c = build_code("dfs2");
  const LogicalAction act = logical_action(sigma(2, 'X', 1), c);
  EXPECT_FALSE(act.preserves_code);
  EXPECT_NEAR(act.leakage_norm, std::sqrt(2.0), 1e-12);
}

TEST(CodeTest, LogicalActionIsLinear) {
  const Code c = build_code("dfs2x2");
  std::mt19937_64 rng(5);
  const auto obs = [&](Axis a, int q) { return c.observable(a, q); };
  for (int trial = 0; trial < 10; ++trial) {
    std::normal_distribution<double> g;
    const Operator h1 = g(rng) * obs(Axis::x, 1) + g(rng) * obs(Axis::z, 2) +
                        g(rng) * collective(4, 'Z');
    const Operator h2 = g(rng) * obs(Axis::y, 2) * obs(Axis::z, 1) +
                        g(rng) * exchange(4, 1, 3);
    const double a = g(rng), b = g(rng);
    const auto l1 = logical_action(h1, c), l2 = logical_action(h2, c);
    const auto l = logical_action(a * h1 + b * h2, c);
    EXPECT_LT(distance(l.logical_part, a * l1.logical_part + b * l2.logical_part),
              1e-12);
    EXPECT_NEAR(l.identity_offset,
                a * l1.identity_offset + b * l2.identity_offset, 1e-12);
  }
}

TEST(CodeTest, LogicalRoundTrip) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (const auto& name : builtin_code_names()) {
    const Code c = build_code(name);
    for (int trial = 0; trial < 10; ++trial) {
      // Random combination of logical Paulis and their pairwise products.
      std::vector<PauliString> abstract;
      Operator physical = Operator::zero(c.physical_dim());
      for (const auto& p : all_pauli_strings(c.logical_qubits)) {
        if (p.letters == std::string(c.logical_qubits, 'I')) continue;
        const double coeff = g(rng);
        abstract.emplace_back(p.letters, coeff);
        Operator term = Operator::identity(c.physical_dim());
        for (int q = 1; q <= c.logical_qubits; ++q)
          if (p.letters[q - 1] != 'I')
            term = term * c.observable(parse_axis(p.letters[q - 1]), q);
        physical += coeff * term;
      }
      const LogicalAction act = logical_action(physical, c);
      EXPECT_LT(act.leakage_norm, 1e-10) << name;
      EXPECT_LT(distance(act.logical_part, pauli_sum(abstract)), 1e-10)
          << name;
    }
  }
}

// Brute-force restriction of the weak-coupling Hamiltonian with all
// prefactors written out, read in the code basis |01 01>, |01 10>, ...
Matrix brute_force_dfs2x2(const NmrParameters& p) {
  const int idx[4] = {0b0101, 0b0110, 0b1001, 0b1010};
  Matrix h = Matrix::Zero(16, 16);
  for (int s = 0; s < 16; ++s) {
    auto z = [s](int q) { return ((s >> (4 - q)) & 1) ? -1.0 : 1.0; };
    double diag = 0;
    for (int q = 1; q <= 4; ++q) diag += pi * p.nu_hz[q - 1] * z(q);
    for (int a = 1; a <= 4; ++a)
      for (int b = a + 1; b <= 4; ++b) diag += 0.5 * pi * p.j(a, b) * z(a) * z(b);
    h(s, s) = diag;
  }
  // Homo-nuclear flip-flops: (pi/2) J (XX + YY) = pi J (|01><10| + h.c.).
  auto flip = [&](int a, int b, double j) {
    for (int s = 0; s < 16; ++s) {
      const int ba = (s >> (4 - a)) & 1, bb = (s >> (4 - b)) & 1;
      if (ba != bb) h(s ^ (1 << (4 - a)) ^ (1 << (4 - b)), s) += pi * j;
    }
  };
  flip(1, 2, p.j(1, 2));
  flip(3, 4, p.j(3, 4));
  Matrix r(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) r(i, k) = h(idx[i], idx[k]);
  r.diagonal().array() -= r.trace() / 4.0;
  return r;
}

TEST(CodeTest, Dfs2x2PhysicalHamiltonianMatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const Code c = build_code("dfs2x2");
  for (int trial = 0; trial < 20; ++trial) {
    NmrParameters p;
    for (auto& v : p.nu_hz) v = u(rng);
    for (auto& v : p.j_hz) v = u(rng);
    const LogicalAction act =
        logical_action(dfs2x2_physical_hamiltonian(p), c);
    EXPECT_LT((act.logical_part.matrix() - brute_force_dfs2x2(p))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
  }
}

TEST(CodeTest, Dfs2x2J13Only) {
  NmrParameters p;
  p.j_hz[1] = 1.0;  // J13
  const Dfs2x2Coefficients k = dfs2x2_coefficients(p.j_hz);
  EXPECT_DOUBLE_EQ(k.a, 1.0 / 8);
  EXPECT_DOUBLE_EQ(k.b, 1.0 / 4);
  EXPECT_DOUBLE_EQ(k.c, 1.0 / 4);
  // The restriction of (pi/2) Z1 Z3 to the code is (pi/2) ZZ^L, so D = 1/2.
  const Matrix oracle = brute_force_dfs2x2(p);
  EXPECT_NEAR(oracle(0, 0).real(), pi / 2, 1e-12);
  EXPECT_DOUBLE_EQ(k.d, 0.5);
  const Dfs2x2Logical l = dfs2x2_logical_hamiltonian(p);
  EXPECT_LT(distance(l.logical, (pi / 2) * logical_pauli("ZZ")), 1e-14);
}

TEST(CodeTest, Dfs2x2SymmetricHeteroCouplingsDropOut) {
  NmrParameters p;
  p.j_hz = {0, 3, 3, 3, 3, 0};
  const Dfs2x2Coefficients k = dfs2x2_coefficients(p.j_hz);
  EXPECT_EQ(k.b, 0.0);
  EXPECT_EQ(k.c, 0.0);
  EXPECT_EQ(k.d, 0.0);
  const LogicalAction act =
      logical_action(dfs2x2_physical_hamiltonian(p), build_code("dfs2x2"));
  EXPECT_LT(act.logical_part.max_abs(), 1e-12);
}

TEST(CodeTest, Dfs2x2ChemicalShiftOnly) {
  NmrParameters p;
  p.nu_hz = {120.0, 20.0, 0, 0};
  const Dfs2x2Logical l = dfs2x2_logical_hamiltonian(p);
  EXPECT_LT(distance(l.logical, (pi * 100.0) * logical_pauli("ZI")), 1e-12);
}

TEST(CodeTest, Dfs2x2ClosedFormMatchesRestriction) {
  const Code c = build_code("dfs2x2");
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    NmrParameters p;
    for (auto& v : p.nu_hz) v = u(rng);
    for (auto& v : p.j_hz) v = u(rng);
    const LogicalAction act =
        logical_action(dfs2x2_physical_hamiltonian(p), c);
    EXPECT_TRUE(act.preserves_code);
    EXPECT_FALSE(act.syndrome_nontrivial);
    EXPECT_LT(distance(act.logical_part, dfs2x2_logical_hamiltonian(p).logical),
              1e-10);
  }
}

TEST(CodeTest, WeakCouplingTruncation) {
  const auto terms = exchange_terms(2, 1, 2, 1.0);
  EXPECT_EQ(weak_coupling_truncate(terms, {"H", "H"}).size(), 3u);
  const auto hetero = weak_coupling_truncate(terms, {"H", "C"});
  ASSERT_EQ(hetero.size(), 1u);
  EXPECT_EQ(hetero[0].letters, "ZZ");
  EXPECT_THROW(weak_coupling_truncate(terms, {"H"}), ValidationError);
}

TEST(CodeTest, PulseCorrespondenceTable) {
  const auto table = verify_pulse_correspondence(build_code("dfs2x2"));
  ASSERT_EQ(table.size(), 6u);
  for (const auto& e : table) {
    EXPECT_TRUE(e.pass) << e.logical << " <-> " << e.physical;
    EXPECT_GE(e.fidelity, 1.0 - 1e-10);
  }
  EXPECT_THROW(verify_pulse_correspondence(build_code("ns3")), ValidationError);
}

TEST(CodeTest, WrongPairingFails) {
  const Code c = build_code("dfs2x2");
  const Operator xx = PauliString::on_qubits(4, "XX", {1, 2}).to_operator();
  const auto e = check_correspondence(c, xx, "z-");
  EXPECT_TRUE(e.preserves_code);
  EXPECT_LT(e.fidelity, 1.0 - 1e-3);
  EXPECT_FALSE(e.pass);
}

}  // namespace
}  // namespace aht
