#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aht/code.h"
#include "aht/operator.h"

namespace aht {

/// One control cycle: free evolution intervals separated by instantaneous
/// pulses.
///
/// Interval m (0-based) lasts durations[m] * cycle_time and is followed by
/// pulses[m] when that pulse exists. With K pulses there are K intervals
/// (the cycle ends on a pulse) or K + 1 intervals (the cycle starts and ends
/// in the identity frame). P_1 = pulses[0] is applied first in time.
///
/// When `code` is set the scheme is encoded: cyclicity and group structure are
/// judged on the code space, where the pulses act as logical rotations.
struct DecouplingScheme {
  std::string name;
  std::vector<Operator> pulses;
  std::vector<double> durations;
  double cycle_time = 1.0;
  std::shared_ptr<const Code> code;

  int dim() const;
  /// Throws ValidationError on any violated invariant.
  void validate() const;
};

/// Weighted set of toggling frames U_k.
struct DecouplingSet {
  std::vector<Operator> frames;
  std::vector<double> weights;
  bool is_group = false;

  int dim() const { return frames.empty() ? 0 : frames.front().dim(); }
  int size() const { return static_cast<int>(frames.size()); }
};

/// Phase-insensitive rounding key: the matrix is rotated so its first
/// significant entry is real positive, then rounded to `grid`.
std::string phase_key(const Matrix& m, double grid = kTol.group_grid);
/// Phase-sensitive rounding key.
std::string exact_key(const Matrix& m, double grid = kTol.group_grid);

/// True if the unitaries contain the identity and are closed under products
/// and inverses modulo global phase, without duplicates.
bool is_closed_group(const std::vector<Operator>& elements);

/// Uniformly weighted group; throws ValidationError unless closed.
DecouplingSet make_group(std::vector<Operator> elements);

/// Toggling frames U_m = P_m ... P_1 with U_0 = I and weights tau_m.
DecouplingSet frames_from_scheme(const DecouplingScheme& s);

/// sum_k w_k U_k^dag H U_k.
Operator average_zeroth(const Operator& h, const DecouplingSet& g);

/// (1/|G|) sum_k U_k^dag H U_k for a decoupling group.
Operator project_group(const Operator& h, const DecouplingSet& g);

/// Leading Magnus correction -(i T_c / 2) sum_{m>n} [H_m, H_n] tau_m tau_n,
/// with H_m the toggling-frame Hamiltonians.
Operator first_order_correction(const Operator& h, const DecouplingScheme& s);

/// Time-ordered product of U_m^dag exp(-i H tau_m T_c) U_m, later factors on
/// the left.
Operator cycle_propagator(const Operator& h, const DecouplingScheme& s);

/// ||logm_effective(cycle) - average_zeroth||_F, optionally after also
/// subtracting the first-order correction.
double magnus_defect(const Operator& h, const DecouplingScheme& s,
                     bool subtract_first_order = false);

/// Where pulses live: bare qubits, logical qubits of a code realized on its
/// physical space through the encoded observables, or the abstract logical
/// space of a code (logical Paulis acting on logical_dim states).
class ControlTarget {
 public:
  enum class Level { physical, encoded, logical };

  static ControlTarget physical(int n_qubits);
  static ControlTarget encoded(std::shared_ptr<const Code> code);
  static ControlTarget logical(std::shared_ptr<const Code> code);

  Level level() const { return level_; }

  int qubits() const;  // number of (logical) qubits the axes address
  int dim() const;
  const std::shared_ptr<const Code>& code() const { return code_; }
  /// Sigma_a on 1-based qubit `q` (physical Pauli or encoded observable).
  const Operator& sigma(Axis a, int q) const;

 private:
  Level level_ = Level::physical;
  int n_ = 1;
  std::shared_ptr<const Code> code_;
  std::vector<Operator> paulis_;  // bare-qubit Paulis: [3 * (q - 1) + axis]
};

/// Rotation prod_q exp(-i angle s_q sigma_{a_q}^q / 2). `axes` holds one
/// token per qubit: "x", "-y", "z", or "i" for no rotation.
Operator rotation_pulse(const ControlTarget& t,
                        const std::vector<std::string>& axes, double angle);

/// Built-in sequences: cp_x, cp_x_symmetric, cp_y, whh4, gmax_cycle,
/// s1_selective_x1, s1_selective_x2, zz_extractor. The last three need a
/// two-logical-qubit code.
DecouplingScheme named_sequence(std::string_view name, const ControlTarget& t,
                                double cycle_time = 1.0);
DecouplingScheme named_sequence(std::string_view name, int n_qubits = 1,
                                double cycle_time = 1.0);
std::vector<std::string> builtin_sequence_names();

/// Built-in decoupling groups on bare qubits: cp_x, cp_y, cp_z ({I, pi_a on
/// every qubit}) and gmax (all 4^n Pauli strings).
DecouplingSet builtin_group(std::string_view name, int n_qubits);
std::vector<std::string> builtin_group_names();

}  // namespace aht
