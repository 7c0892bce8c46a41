#include "aht/noise.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "aht/error.h"
#include "aht/pauli.h"

namespace aht {

std::string to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::collective_fast:
      return "collective_fast";
    case ChannelKind::independent_slow:
      return "independent_slow";
    case ChannelKind::logical:
      return "logical";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view s) {
  if (s == "collective_fast") return ChannelKind::collective_fast;
  if (s == "independent_slow") return ChannelKind::independent_slow;
  if (s == "logical") return ChannelKind::logical;
  throw ValidationError("unknown channel kind '" + std::string(s) + "'");
}

void DephasingChannel::validate() const {
  if (!(correlation_time > 0))
    throw ValidationError("channel '" + label +
                          "': correlation time must be positive");
  if (!(amplitude >= 0))
    throw ValidationError("channel '" + label +
                          "': amplitude must be nonnegative");
  if (!coupling.is_hermitian())
    throw ValidationError("channel '" + label +
                          "': coupling operator is not Hermitian");
}

void NoiseScenario::validate() const {
  const std::string who = "scenario '" + name + "': ";
  const int d = dim();
  if (!hamiltonian.is_hermitian())
    throw ValidationError(who + "Hamiltonian is not Hermitian");
  for (const auto& c : channels) {
    c.validate();
    if (c.coupling.dim() != d)
      throw ValidationError(who + "channel '" + c.label +
                            "' has the wrong dimension");
  }
  schedule.validate();
  if (schedule.dim() != d)
    throw ValidationError(who + "schedule acts on the wrong dimension");
  if (repetitions < 1) throw ValidationError(who + "repetitions must be >= 1");
  if (ensemble_size < 1)
    throw ValidationError(who + "ensemble size must be >= 1");
  if (std::abs(total_time - repetitions * schedule.cycle_time) >
      1e-9 * total_time)
    throw ValidationError(who + "total time " + std::to_string(total_time) +
                          " s is not repetitions x cycle time");
  if (observable.dim() != d || !observable.is_hermitian())
    throw ValidationError(who + "observable must be Hermitian of dimension " +
                          std::to_string(d));
  if (initial_state.size() != d ||
      std::abs(initial_state.norm() - 1.0) > 1e-10)
    throw ValidationError(who + "initial state must be a unit vector");
  if (code && code->physical_dim() != d)
    throw ValidationError(who + "code does not match the system dimension");
}

DecouplingScheme free_evolution(int dim, double segment_time) {
  DecouplingScheme s;
  s.name = "free";
  s.pulses = {Operator::identity(dim).with_label("I")};
  s.durations = {1.0};
  s.cycle_time = segment_time;
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trajectory,
                          std::uint64_t channel) {
  return splitmix64(splitmix64(splitmix64(seed) ^ trajectory) ^ channel);
}

OuProcess::OuProcess(double correlation_time, double amplitude,
                     std::uint64_t seed)
    : tau_(correlation_time), sigma_(amplitude), rng_(seed) {
  if (!(tau_ > 0)) throw ValidationError("OU correlation time must be positive");
  if (!(sigma_ >= 0)) throw ValidationError("OU amplitude must be nonnegative");
  x_ = sigma_ * normal_(rng_);
}

double OuProcess::advance(double dt) {
  const double decay = std::exp(-dt / tau_);
  x_ = x_ * decay + sigma_ * std::sqrt(1.0 - decay * decay) * normal_(rng_);
  return x_;
}

std::vector<double> ou_trajectory(double correlation_time, double amplitude,
                                  double dt, int steps, std::uint64_t seed) {
  if (!(dt > 0) || dt > correlation_time / 10.0)
    throw ValidationError("ou_trajectory: dt must be in (0, tau_c / 10]");
  if (steps < 0) throw ValidationError("ou_trajectory: negative step count");
  OuProcess p(correlation_time, amplitude, seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps > 0) out.push_back(p.value());
  for (int k = 1; k < steps; ++k) out.push_back(p.advance(dt));
  return out;
}

std::vector<Step> step_grid(const NoiseScenario& s) {
  const double tc = s.schedule.cycle_time;
  double dt_max = tc / 20.0;
  for (const auto& c : s.channels)
    if (c.amplitude > 0) dt_max = std::min(dt_max, c.correlation_time / 20.0);

  std::vector<Step> grid;
  const auto& tau = s.schedule.durations;
  const int n_pulses = static_cast<int>(s.schedule.pulses.size());
  for (int r = 0; r < s.repetitions; ++r) {
    double t = r * tc;
    for (std::size_t m = 0; m < tau.size(); ++m) {
      const double len = tau[m] * tc;
      const int n = std::max(1, static_cast<int>(std::ceil(len / dt_max - 1e-9)));
      const double dt = len / n;
      for (int k = 0; k < n; ++k) {
        Step st;
        st.dt = dt;
        st.midpoint = t + (k + 0.5) * dt;
        grid.push_back(st);
      }
      t += len;
      if (static_cast<int>(m) < n_pulses) grid.back().pulse_after = static_cast<int>(m);
    }
    grid.back().cycle_end = true;
  }
  return grid;
}

NoiseSamples sample_noise(const NoiseScenario& s, const std::vector<Step>& grid,
                          std::uint64_t trajectory) {
  NoiseSamples out(s.channels.size());
  for (std::size_t c = 0; c < s.channels.size(); ++c) {
    const auto& ch = s.channels[c];
    auto& v = out[c];
    v.resize(grid.size(), 0.0);
    if (ch.amplitude == 0) continue;
    OuProcess p(ch.correlation_time, ch.amplitude,
                derive_seed(s.seed, trajectory, c));
    double t = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      v[k] = p.advance(grid[k].midpoint - t);
      t = grid[k].midpoint;
    }
  }
  return out;
}

namespace {

double expectation(const Matrix& o, const Vector& psi) {
  return psi.dot(o * psi).real();
}

bool is_diagonal(const Matrix& m) {
  return (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

TrajectoryResult propagate_trajectory(const NoiseScenario& s,
                                      const std::vector<Step>& grid,
                                      const NoiseSamples& noise) {
  if (noise.size() != s.channels.size())
    throw ValidationError("propagate_trajectory: one noise record per channel");
  for (const auto& v : noise)
    if (v.size() != grid.size())
      throw ValidationError("propagate_trajectory: noise/grid length mismatch");

  const int d = s.dim();
  const Matrix& h0 = s.hamiltonian.matrix();
  bool diagonal = is_diagonal(h0);
  for (const auto& c : s.channels) diagonal = diagonal && is_diagonal(c.coupling.matrix());

  TrajectoryResult out;
  Matrix u = Matrix::Identity(d, d);
  const Matrix& o = s.observable.matrix();
  out.expectations.push_back(expectation(o, s.initial_state));

  Eigen::VectorXd diag(d);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (diagonal) {
      diag = h0.diagonal().real();
      for (std::size_t c = 0; c < s.channels.size(); ++c)
        diag += noise[c][k] * s.channels[c].coupling.matrix().diagonal().real();
      for (int i = 0; i < d; ++i)
        u.row(i) *= std::exp(Complex(0, -diag(i) * grid[k].dt));
    } else {
      Matrix h = h0;
      for (std::size_t c = 0; c < s.channels.size(); ++c)
        h += noise[c][k] * s.channels[c].coupling.matrix();
      u = expm(Operator(h), grid[k].dt).matrix() * u;
    }
    if (grid[k].pulse_after >= 0)
      u = s.schedule.pulses[grid[k].pulse_after].matrix() * u;
    if (grid[k].cycle_end)
      out.expectations.push_back(expectation(o, u * s.initial_state));
  }
  out.propagator = Operator(std::move(u), "U");
  return out;
}

int worker_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AHT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs fn(trajectory) for every trajectory; results land in index order.
template <typename T, typename Fn>
std::vector<T> run_ensemble(int n, int threads, Fn fn) {
  std::vector<T> results(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n; k = next++) results[k] = fn(k);
  };
  const int t = std::min(worker_threads(threads), n);
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace

DecayCurve ensemble_coherence(const NoiseScenario& s, int threads) {
  s.validate();
  const auto grid = step_grid(s);
  const auto per_traj = run_ensemble<std::vector<double>>(
      s.ensemble_size, threads, [&](int k) {
        return propagate_trajectory(s, grid, sample_noise(s, grid, k))
            .expectations;
      });

  DecayCurve c;
  c.n_traj = s.ensemble_size;
  const std::size_t points = per_traj.front().size();
  const double n = s.ensemble_size;
  for (std::size_t p = 0; p < points; ++p) {
    double sum = 0, sum_sq = 0;
    for (const auto& e : per_traj) {
      sum += e[p];
      sum_sq += e[p] * e[p];
    }
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    c.time.push_back(p * s.schedule.cycle_time);
    c.mean.push_back(std::abs(mean));
    c.std_error.push_back(std::sqrt(var / n));
  }
  return c;
}

Matrix ensemble_density_matrix(const NoiseScenario& s, int threads) {
  s.validate();
  const auto grid = step_grid(s);
  const auto finals = run_ensemble<Vector>(s.ensemble_size, threads, [&](int k) {
    const auto r = propagate_trajectory(s, grid, sample_noise(s, grid, k));
    return Vector(r.propagator.matrix() * s.initial_state);
  });
  Matrix rho = Matrix::Zero(s.dim(), s.dim());
  for (const auto& psi : finals) rho += psi * psi.adjoint();
  return rho / static_cast<double>(s.ensemble_size);
}

std::string decay_curve_csv(const DecayCurve& c,
                            const std::vector<std::string>& header) {
  std::string out;
  for (const auto& line : header) out += "# " + line + "\n";
  out += "time_s,mean_coherence,std_error,n_traj\n";
  char buf[128];
  for (std::size_t p = 0; p < c.time.size(); ++p) {
    std::snprintf(buf, sizeof buf, "%.9g,%.12g,%.6g,%d\n", c.time[p], c.mean[p],
                  c.std_error[p], c.n_traj);
    out += buf;
  }
  return out;
}

namespace {

Vector plus_state(int dim, const Code* code) {
  Vector logical(2);
  logical << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  if (code) {
    Vector l = logical;
    for (int q = 1; q < code->logical_qubits; ++q) {
      Vector grown(l.size() * 2);
      for (Eigen::Index i = 0; i < l.size(); ++i) {
        grown(2 * i) = l(i) * logical(0);
        grown(2 * i + 1) = l(i) * logical(1);
      }
      l = grown;
    }
    return code->encode(l);
  }
  // |+> on qubit 1, |0> elsewhere.
  Vector v = Vector::Zero(dim);
  v(0) = logical(0);
  v(dim / 2) = logical(1);
  return v;
}

DephasingChannel channel(Operator c, double tau, double amp, ChannelKind k,
                         std::string label) {
  DephasingChannel ch;
  ch.coupling = std::move(c);
  ch.correlation_time = tau;
  ch.amplitude = amp;
  ch.kind = k;
  ch.label = std::move(label);
  return ch;
}

void attach_schedule(NoiseScenario& s, const ScenarioParams& p,
                     std::string_view sequence) {
  const int reps =
      static_cast<int>(std::llround(p.total_time / p.cycle_time));
  if (reps < 1 || std::abs(reps * p.cycle_time - p.total_time) >
                      1e-9 * p.total_time)
    throw ValidationError("total time must be a whole number of cycles");
  s.repetitions = reps;
  s.total_time = p.total_time;
  if (!p.pulses) {
    s.schedule = free_evolution(s.dim(), p.cycle_time);
    return;
  }
  const ControlTarget target =
      s.code ? ControlTarget::encoded(s.code)
             : ControlTarget::physical(s.hamiltonian.num_qubits());
  s.schedule = named_sequence(sequence, target, p.cycle_time);
}

}  // namespace

NoiseScenario build_scenario(std::string_view name, const ScenarioParams& p) {
  NoiseScenario s;
  s.name = std::string(name);
  s.ensemble_size = p.ensemble_size;
  s.seed = p.seed;

  if (name == "hybrid_dephasing" || name == "encoded_spin_boson" ||
      name == "encoded_depolarizing") {
    const bool encoded = p.encoded || name != "hybrid_dephasing";
    if (encoded) s.code = std::make_shared<const Code>(build_code("dfs2"));
    const Operator z1 = sigma(2, 'Z', 1), z2 = sigma(2, 'Z', 2);
    if (encoded) {
      const Operator& zl = s.code->observable(Axis::z, 1);
      const Operator& xl = s.code->observable(Axis::x, 1);
      s.hamiltonian = p.delta_omega * zl;
      if (name == "encoded_spin_boson") s.hamiltonian += p.j_drift * xl;
      s.observable = xl;
    } else {
      s.hamiltonian = p.delta_omega * z1;
      s.observable = sigma(2, 'X', 1);
    }
    s.hamiltonian = s.hamiltonian.with_label("H_S");
    if (name != "encoded_depolarizing")
      s.channels.push_back(channel(collective(2, 'Z'), p.tau_fast, p.amp_fast,
                                   ChannelKind::collective_fast, "S_z B1"));
    s.channels.push_back(channel(z1, p.tau_slow, p.amp_slow,
                                 ChannelKind::independent_slow, "Z1 B21"));
    s.channels.push_back(channel(z2, p.tau_slow, p.amp_slow,
                                 ChannelKind::independent_slow, "Z2 B22"));
    if (name == "encoded_depolarizing")
      s.channels.push_back(channel(s.code->observable(Axis::x, 1), p.tau_slow,
                                   p.amp_logical, ChannelKind::logical,
                                   "sx^L Bx"));
    s.initial_state = plus_state(4, s.code.get());
    attach_schedule(s, p,
                    name == "encoded_depolarizing" ? "gmax_cycle" : "cp_x");
  } else if (name == "four_qubit_blockwise") {
    s.code = std::make_shared<const Code>(build_code("dfs2x2"));
    s.hamiltonian = (p.delta_omega * (s.code->observable(Axis::z, 1) +
                                      s.code->observable(Axis::z, 2)))
                        .with_label("H_S");
    s.channels.push_back(channel(sigma(4, 'Z', 1) + sigma(4, 'Z', 2),
                                 p.tau_fast, p.amp_fast,
                                 ChannelKind::collective_fast, "S_z^(12) B1"));
    s.channels.push_back(channel(sigma(4, 'Z', 3) + sigma(4, 'Z', 4),
                                 p.tau_fast, p.amp_fast,
                                 ChannelKind::collective_fast, "S_z^(34) B1'"));
    for (int q = 1; q <= 4; ++q)
      s.channels.push_back(channel(sigma(4, 'Z', q), p.tau_slow, p.amp_slow,
                                   ChannelKind::independent_slow,
                                   "Z" + std::to_string(q) + " B2"));
    s.observable = s.code->observable(Axis::x, 1);
    s.initial_state = plus_state(16, s.code.get());
    attach_schedule(s, p, "cp_x");
  } else {
    throw ValidationError("unknown scenario '" + std::string(name) + "'");
  }
  s.validate();
  return s;
}

std::vector<std::string> builtin_scenario_names() {
  return {"hybrid_dephasing", "encoded_spin_boson", "encoded_depolarizing",
          "four_qubit_blockwise"};
}

}  // namespace aht
