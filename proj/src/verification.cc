#include "aht/verification.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "aht/code.h"
#include "aht/decoupling.h"
#include "aht/error.h"
#include "aht/noise.h"
#include "aht/pauli.h"
#include "aht/universality.h"

namespace aht {

namespace {

using std::numbers::pi;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string g(double x) { return fmt("%.4g", x); }

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t criterion) {
  return std::mt19937_64(derive_seed(seed, criterion, 0));
}

Operator random_hermitian(int n, std::mt19937_64& rng, bool traceless) {
  std::normal_distribution<double> gauss;
  const int d = 1 << n;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return Operator::hermitian(0.5 * (a + a.adjoint()), "H", traceless);
}

// Largest |coefficient| among Pauli components other than `keep`.
double largest_other(const Operator& op, const std::string& keep) {
  double worst = 0;
  for (const auto& p : pauli_decompose(op, 0.0))
    if (p.letters != keep) worst = std::max(worst, std::abs(p.coefficient));
  return worst;
}

Complex component(const Operator& op, const std::string& word) {
  for (const auto& p : pauli_decompose(op, 0.0))
    if (p.letters == word) return p.coefficient;
  return 0.0;
}

}  // namespace

CriterionResult verify_projector_laws(std::uint64_t seed) {
  constexpr int kSamples = 200;
  constexpr double kTol = 1e-10;
  CriterionResult r{1, "projector laws on built-in groups", true, ""};
  auto rng = stream(seed, 1);
  std::vector<std::vector<std::pair<std::string, DecouplingSet>>> groups(5);
  for (int n = 1; n <= 4; ++n) {
    for (const auto& name : builtin_group_names())
      groups[n].emplace_back(name, builtin_group(name, n));
    if (n == 1) groups[n].emplace_back("transformer", transformer_group());
  }
  double idem = 0, comm = 0;
  int checks = 0;
  for (int k = 0; k < kSamples; ++k) {
    const int n = 1 + k % 4;
    const Operator h = random_hermitian(n, rng, false);
    for (const auto& [name, grp] : groups[n]) {
      const Operator ph = project_group(h, grp);
      idem = std::max(idem, distance(project_group(ph, grp), ph));
      for (const auto& u : grp.frames)
        comm = std::max(comm, commutator(ph, u).max_abs());
      ++checks;
    }
  }
  r.pass = idem < kTol && comm < kTol;
  r.detail = std::to_string(kSamples) + " H, " + std::to_string(checks) +
             " projections; max idempotence error " + g(idem) +
             ", max commutator " + g(comm) + " (tol 1e-10)";
  return r;
}

CriterionResult verify_whh4_dipolar() {
  CriterionResult r{2, "WHH-4 averages the dipolar coupling", true, ""};
  const Operator dip = 3.0 * (sigma(2, 'Z', 1) * sigma(2, 'Z', 2)) -
                       exchange(2, 1, 2);
  const DecouplingSet frames = frames_from_scheme(named_sequence("whh4", 2));
  const double residual = average_zeroth(dip, frames).max_abs();
  r.pass = residual < 1e-10;
  r.detail = "max |average| " + g(residual) + " (tol 1e-10)";
  return r;
}

CriterionResult verify_magnus_scaling(std::uint64_t seed) {
  constexpr int kSamples = 10;
  constexpr double kCycle = 0.05;
  CriterionResult r{3, "Magnus defect scaling under cycle halving", true, ""};
  auto rng = stream(seed, 3);
  auto ratio = [](const Operator& h, const char* seq, bool first) {
    return magnus_defect(h, named_sequence(seq, 2, kCycle), first) /
           magnus_defect(h, named_sequence(seq, 2, kCycle / 2), first);
  };
  double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {0, 0, 0};
  for (int k = 0; k < kSamples; ++k) {
    Operator h = random_hermitian(2, rng, true);
    h *= 1.0 / h.spectral_norm();
    const double v[3] = {ratio(h, "cp_x", false),
                         ratio(h, "cp_x_symmetric", false),
                         ratio(h, "cp_x", true)};
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  r.pass = lo[0] >= 1.7 && hi[0] <= 2.3 && lo[1] >= 3.4 && hi[1] <= 4.6 &&
           lo[2] >= 3.4 && hi[2] <= 4.6;
  auto range = [&](int i) { return "[" + g(lo[i]) + ", " + g(hi[i]) + "]"; };
  r.detail = "T_c 0.05; asymmetric " + range(0) + " in [1.7, 2.3], symmetric " +
             range(1) + " in [3.4, 4.6], asymmetric + first order " +
             range(2) + " in [3.4, 4.6]";
  return r;
}

CriterionResult verify_ns3_identity(std::uint64_t seed) {
  CriterionResult r{4, "three-spin subsystem logical Hamiltonian", true, ""};
  const Code c = build_code("ns3");
  auto rng = stream(seed, 4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0;
  bool preserved = true;
  for (int k = 0; k < 100; ++k) {
    const double om = u(rng), j12 = u(rng), j23 = u(rng), j31 = u(rng);
    const LogicalAction act =
        logical_action(ns3_physical_hamiltonian(om, j12, j23, j31), c);
    preserved = preserved && act.preserves_code;
    worst = std::max(worst, distance(act.logical_part,
                                     ns3_logical_hamiltonian(om, j12, j23, j31)));
  }
  const double j = u(rng);
  const double sym =
      logical_action(ns3_physical_hamiltonian(u(rng), j, j, j), c)
          .logical_part.max_abs();
  r.pass = preserved && worst < 1e-10 && sym < 1e-10;
  r.detail = "100 draws, max |closed - restricted| " + g(worst) +
             "; symmetric couplings leave " + g(sym) + " (tol 1e-10)";
  return r;
}

CriterionResult verify_dfs2x2_identity(std::uint64_t seed) {
  CriterionResult r{5, "four-spin DFS logical Hamiltonian", true, ""};
  const Code c = build_code("dfs2x2");
  auto rng = stream(seed, 5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0;
  bool preserved = true;
  for (int k = 0; k < 100; ++k) {
    NmrParameters p;
    for (auto& v : p.nu_hz) v = u(rng);
    for (auto& v : p.j_hz) v = u(rng);
    const LogicalAction act = logical_action(dfs2x2_physical_hamiltonian(p), c);
    preserved = preserved && act.preserves_code && !act.syndrome_nontrivial;
    worst = std::max(worst,
                     distance(act.logical_part, dfs2x2_logical_hamiltonian(p).logical));
  }
  NmrParameters only13;
  only13.j_hz = {0, 1.0, 0, 0, 0, 0};
  const double d = dfs2x2_coefficients(only13.j_hz).d;
  const double zz = component(logical_action(dfs2x2_physical_hamiltonian(only13), c)
                                  .logical_part, "ZZ").real();
  const bool identity_ok = preserved && worst < 1e-10;
  const bool d_ok = d == 0.25;
  r.pass = identity_ok && d_ok;
  r.detail = "100 draws, max |closed - restricted| " + g(worst) +
             " (tol 1e-10, " + (identity_ok ? "ok" : "FAIL") +
             "); J13-only D = " + g(d) + ", expected 0.25 (" +
             (d_ok ? "ok" : "FAIL") + "); restricted ZZ coefficient " +
             g(zz / pi) + " pi rad/s per Hz";
  return r;
}

CriterionResult verify_encoded_selectivity(std::uint64_t seed) {
  CriterionResult r{6, "encoded sequence selectivity on dfs2x2", true, ""};
  auto code = std::make_shared<const Code>(build_code("dfs2x2"));
  auto rng = stream(seed, 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Logical level: shifts, transverse terms and ZZ with random coefficients.
  std::vector<PauliString> terms;
  for (const char* w : {"ZI", "IZ", "XI", "IX", "ZZ"})
    terms.emplace_back(w, 1.0 + u(rng) * 0.5);
  const Operator hl = pauli_sum(terms);
  const ControlTarget logical = ControlTarget::logical(code);
  const Operator s1l = average_zeroth(
      hl, frames_from_scheme(named_sequence("s1_selective_x1", logical)));
  const Operator zzl = average_zeroth(
      hl, frames_from_scheme(named_sequence("zz_extractor", logical)));

  // Physical level: NMR Hamiltonian on four spins under encoded pulses.
  NmrParameters p;
  for (auto& v : p.nu_hz) v = 50.0 * u(rng);
  for (auto& v : p.j_hz) v = 10.0 * u(rng);
  const Operator hp = dfs2x2_physical_hamiltonian(p);
  const ControlTarget enc = ControlTarget::encoded(code);
  const LogicalAction s1p = logical_action(
      average_zeroth(hp, frames_from_scheme(named_sequence("s1_selective_x1", enc))),
      *code);
  const LogicalAction zzp = logical_action(
      average_zeroth(hp, frames_from_scheme(named_sequence("zz_extractor", enc))),
      *code);

  const double other = std::max({largest_other(s1l, "XI"), largest_other(zzl, "ZZ"),
                                 largest_other(s1p.logical_part, "XI"),
                                 largest_other(zzp.logical_part, "ZZ")});
  const double kept = std::min({std::abs(component(s1l, "XI")),
                                std::abs(component(zzl, "ZZ")),
                                std::abs(component(s1p.logical_part, "XI")),
                                std::abs(component(zzp.logical_part, "ZZ"))});
  r.pass = other < 1e-10 && kept > 1e-6 && s1p.preserves_code && zzp.preserves_code;
  r.detail = "logical and physical levels; largest suppressed component " +
             g(other) + " (tol 1e-10), smallest kept component " + g(kept);
  return r;
}

CriterionResult verify_pulse_table() {
  CriterionResult r{7, "encoded pulse correspondence on dfs2x2", true, ""};
  const auto table = verify_pulse_correspondence(build_code("dfs2x2"));
  double worst = 1.0;
  bool all = table.size() == 6;
  for (const auto& e : table) {
    worst = std::min(worst, e.fidelity);
    all = all && e.pass && e.preserves_code && e.fidelity >= 1.0 - 1e-10;
  }
  r.pass = all;
  r.detail = std::to_string(table.size()) + " pairs, min fidelity 1 - " +
             g(1.0 - worst) + " (need 1 - 1e-10)";
  return r;
}

CriterionResult verify_universality(std::uint64_t seed) {
  CriterionResult r{8, "logical universality and transformer reach", true, ""};
  auto rng = stream(seed, 8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Complex i(0, 1);
  const DecouplingSet cp = frames_from_scheme(named_sequence("cp_x", 1));
  int min_dim = 99, max_dim = 0;
  for (int k = 0; k < 20; ++k) {
    const Operator h = ns3_logical_hamiltonian(u(rng), u(rng), u(rng), u(rng));
    const LieBasis l = lie_closure({i * h, i * project_group(h, cp)}, 4);
    min_dim = std::min(min_dim, l.dimension);
    max_dim = std::max(max_dim, l.dimension);
  }
  const DecouplingSet tg = transformer_group();
  int reached = 0;
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    Operator a = random_hermitian(1, rng, true);
    a *= 1.0 / a.frobenius_norm();
    const Operator target = random_hermitian(1, rng, true);
    const ReachResult rr = transformer_reach(tg, a, target);
    const bool nonneg = std::all_of(rr.weights.begin(), rr.weights.end(),
                                    [](double w) { return w >= 0; });
    worst = std::max(worst, rr.residual);
    if (rr.reachable && nonneg && rr.residual < 1e-8) ++reached;
  }
  r.pass = min_dim == 3 && max_dim == 3 && tg.size() == 24 && reached == 50;
  r.detail = "ns3 pair closure dimension " + std::to_string(min_dim) + ".." +
             std::to_string(max_dim) + " over 20 draws (need 3); transformer order " +
             std::to_string(tg.size()) + ", reached " + std::to_string(reached) +
             "/50, max residual " + g(worst) + " (tol 1e-8)";
  return r;
}

CriterionResult verify_encoded_suppression(std::uint64_t seed) {
  constexpr int kInvarianceTraj = 500;
  constexpr int kScalingTraj = 1000;
  constexpr int kCompareTraj = 500;
  CriterionResult r{9, "encoded suppression under classical dephasing", true, ""};

  // (a) collective noise only, no pulses: every trajectory acts trivially on
  // the code.
  ScenarioParams pa;
  pa.amp_slow = 0;
  pa.pulses = false;
  pa.ensemble_size = kInvarianceTraj;
  pa.seed = seed;
  const NoiseScenario sa = build_scenario("hybrid_dephasing", pa);
  const auto grid = step_grid(sa);
  double dev = 0;
  for (int k = 0; k < kInvarianceTraj; ++k) {
    const auto tr = propagate_trajectory(sa, grid, sample_noise(sa, grid, k));
    const Matrix m = sa.code->restrict(tr.propagator);
    dev = std::max(dev, (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
  }
  const bool a_ok = dev < 1e-12;

  // (b) slow independent channels only, encoded CP at fixed total time.
  ScenarioParams pb;
  pb.amp_fast = 0;
  pb.ensemble_size = kScalingTraj;
  pb.seed = seed;
  const DecayCurve full = ensemble_coherence(build_scenario("hybrid_dephasing", pb));
  pb.cycle_time /= 2;
  const DecayCurve half = ensemble_coherence(build_scenario("hybrid_dephasing", pb));
  const double e_full = 1.0 - full.mean.back();
  const double e_half = 1.0 - half.mean.back();
  const double ratio = e_full / e_half;
  const bool b_ok = ratio >= 3.0 && ratio <= 5.0;

  // (c) hybrid noise: pulsed physical qubit vs pulsed encoded qubit.
  ScenarioParams pc;
  pc.ensemble_size = kCompareTraj;
  pc.seed = seed;
  const double e_enc =
      1.0 - ensemble_coherence(build_scenario("hybrid_dephasing", pc)).mean.back();
  pc.encoded = false;
  const double e_phys =
      1.0 - ensemble_coherence(build_scenario("hybrid_dephasing", pc)).mean.back();
  const bool c_ok = e_phys > e_enc;

  r.pass = a_ok && b_ok && c_ok;
  r.detail = "(a) " + std::to_string(kInvarianceTraj) +
             " trajectories, max code deviation " + g(dev) + " (tol 1e-12); (b) " +
             std::to_string(kScalingTraj) + " trajectories, eps(T_c) " + g(e_full) +
             ", eps(T_c/2) " + g(e_half) + ", ratio eps(T_c)/eps(T_c/2) " +
             g(ratio) + " in [3, 5]; (c) " + std::to_string(kCompareTraj) +
             " trajectories, physical " + g(e_phys) + " > encoded " + g(e_enc);
  return r;
}

CriterionResult verify_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return verify_projector_laws(seed);
    case 2: return verify_whh4_dipolar();
    case 3: return verify_magnus_scaling(seed);
    case 4: return verify_ns3_identity(seed);
    case 5: return verify_dfs2x2_identity(seed);
    case 6: return verify_encoded_selectivity(seed);
    case 7: return verify_pulse_table();
    case 8: return verify_universality(seed);
    case 9: return verify_encoded_suppression(seed);
  }
  throw ValidationError("no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_verification(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    try {
      out.push_back(verify_criterion(id, seed));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false,
                     std::string("error: ") + e.what()});
    }
  }
  return out;
}

std::string format_report(const std::vector<CriterionResult>& results,
                          std::uint64_t seed) {
  std::ostringstream os;
  int passed = 0;
  os << "aht verify  seed " << seed << "\n";
  for (const auto& r : results) {
    passed += r.pass;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.title << ": "
       << r.detail << "\n";
  }
  os << passed << "/" << results.size() << " passed\n";
  return os.str();
}

}  // namespace aht
