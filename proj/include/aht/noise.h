#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "aht/code.h"
#include "aht/decoupling.h"
#include "aht/operator.h"

namespace aht {

enum class ChannelKind { collective_fast, independent_slow, logical };

std::string to_string(ChannelKind k);
ChannelKind parse_channel_kind(std::string_view s);

/// Classical Gaussian dephasing: H_noise(t) = eta(t) C with eta a stationary
/// Ornstein-Uhlenbeck process of rms `amplitude` (rad/s) and correlation time
/// `correlation_time` (s).
struct DephasingChannel {
  Operator coupling;
  double correlation_time = 1.0;
  double amplitude = 0.0;
  ChannelKind kind = ChannelKind::independent_slow;
  std::string label;

  void validate() const;
};

/// System Hamiltonian, noise channels and a repeated pulse cycle. Free
/// evolution is the identity scheme with cycle_time = total_time /
/// repetitions; readouts happen at every cycle boundary.
struct NoiseScenario {
  std::string name;
  Operator hamiltonian;
  std::vector<DephasingChannel> channels;
  std::shared_ptr<const Code> code;
  DecouplingScheme schedule;
  int repetitions = 1;
  int ensemble_size = 100;
  double total_time = 1.0;
  std::uint64_t seed = 1;
  Operator observable;
  Vector initial_state;

  int dim() const { return hamiltonian.dim(); }
  /// Throws ValidationError on inconsistent dimensions, a non-normalized
  /// state, or total_time != repetitions * cycle_time.
  void validate() const;
};

/// Identity scheme for unpulsed evolution over one segment.
DecouplingScheme free_evolution(int dim, double segment_time);

/// SplitMix64 mixing, used to derive independent per-trajectory streams.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trajectory,
                          std::uint64_t channel);

/// Stationary OU process with exact discretization.
class OuProcess {
 public:
  OuProcess(double correlation_time, double amplitude, std::uint64_t seed);
  double value() const { return x_; }
  /// Advances by dt >= 0 and returns the new value.
  double advance(double dt);

 private:
  double tau_;
  double sigma_;
  double x_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

/// `steps` samples spaced by dt, starting from a stationary draw. Throws
/// ValidationError when dt > correlation_time / 10.
std::vector<double> ou_trajectory(double correlation_time, double amplitude,
                                  double dt, int steps, std::uint64_t seed);

struct Step {
  double dt = 0;
  double midpoint = 0;   // absolute time of the noise sample
  int pulse_after = -1;  // index into schedule.pulses applied after the step
  bool cycle_end = false;
};

/// Steps of at most min(tau_c / 20, T_c / 20) for every channel with nonzero
/// amplitude, aligned so that interval boundaries coincide with step ends.
std::vector<Step> step_grid(const NoiseScenario& s);

/// noise[channel][step]
using NoiseSamples = std::vector<std::vector<double>>;

NoiseSamples sample_noise(const NoiseScenario& s, const std::vector<Step>& grid,
                          std::uint64_t trajectory);

struct TrajectoryResult {
  Operator propagator;
  std::vector<double> expectations;  // <O> at t = 0 and each cycle end
};

TrajectoryResult propagate_trajectory(const NoiseScenario& s,
                                      const std::vector<Step>& grid,
                                      const NoiseSamples& noise);

struct DecayCurve {
  std::vector<double> time;
  std::vector<double> mean;       // |ensemble mean of <O>|
  std::vector<double> std_error;  // of the ensemble mean
  int n_traj = 0;
};

/// Number of worker threads: `requested` if positive, else AHT_THREADS,
/// else the hardware concurrency.
int worker_threads(int requested = 0);

/// Monte Carlo average over ensemble_size seeded trajectories. Results do not
/// depend on the thread count.
DecayCurve ensemble_coherence(const NoiseScenario& s, int threads = 0);

/// Ensemble-averaged final state U rho_0 U^dag.
Matrix ensemble_density_matrix(const NoiseScenario& s, int threads = 0);

/// CSV with columns time_s, mean_coherence, std_error, n_traj; each header
/// line is emitted as "# <line>".
std::string decay_curve_csv(const DecayCurve& c,
                            const std::vector<std::string>& header = {});

/// Parameters shared by the built-in scenarios (SI units, rad/s).
struct ScenarioParams {
  double cycle_time = 1e-3;
  double tau_fast = 5e-5;
  double tau_slow = 2e-2;
  double amp_fast = 1500.0;
  double amp_slow = 300.0;
  double amp_logical = 300.0;
  double delta_omega = 0.0;
  double j_drift = 200.0;
  double total_time = 8e-3;
  int ensemble_size = 500;
  std::uint64_t seed = 1;
  bool encoded = true;
  bool pulses = true;

  bool operator==(const ScenarioParams&) const = default;
};

/// hybrid_dephasing, encoded_spin_boson, encoded_depolarizing,
/// four_qubit_blockwise.
NoiseScenario build_scenario(std::string_view name,
                             const ScenarioParams& p = {});
std::vector<std::string> builtin_scenario_names();

}  // namespace aht
