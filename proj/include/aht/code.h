#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aht/operator.h"
#include "aht/pauli.h"

namespace aht {

enum class Axis { x, y, z };

char axis_letter(Axis a);  // 'X', 'Y', 'Z'
Axis parse_axis(char c);   // accepts x/y/z in either case

/// Encoding H_S ~ H_L (x) H_Z (+) R of logical qubits into physical qubits.
///
/// Column `l * syndrome_dim + z` of the isometry is the physical state for
/// logical basis index l and syndrome index z. Logical observables are
/// physical operators that preserve the code and restrict to
/// sigma_a (x) I_Z on it, with logical qubit 1 the most significant factor
/// of the logical index.
struct Code {
  std::string name;
  int n_physical = 0;
  int logical_qubits = 0;
  int logical_dim = 0;
  int syndrome_dim = 1;
  Matrix isometry;
  std::map<std::pair<Axis, int>, Operator> logical_observables;

  int physical_dim() const { return 1 << n_physical; }
  int code_dim() const { return logical_dim * syndrome_dim; }

  Matrix projector() const { return isometry * isometry.adjoint(); }
  /// Physical operator acting as sigma_a on 1-based logical qubit `qubit`.
  const Operator& observable(Axis a, int qubit) const;
  /// V^dag H V, an operator on the code_dim-dimensional code space.
  Matrix restrict(const Operator& h) const;
  /// ||(I - P) H P||_F: the part of H that maps code states out of the code.
  double leakage(const Operator& h) const;
  /// Embeds a logical state vector (length logical_dim) with syndrome index
  /// `syndrome` into the physical space.
  Vector encode(const Vector& logical_state, int syndrome = 0) const;
};

/// Names: "ns3", "dfs2", "dfs2x2". Throws ValidationError otherwise.
Code build_code(std::string_view name);
std::vector<std::string> builtin_code_names();

/// Restriction of a physical operator to a code, split as
/// R = L (x) I_Z + I_L (x) M + c I with L, M traceless.
struct LogicalAction {
  bool preserves_code = false;
  Operator logical_part;      // L, on the logical_dim space
  double identity_offset = 0;  // Re(c)
  double leakage_norm = 0;
  bool syndrome_nontrivial = false;  // M != 0 or R does not split
  double syndrome_norm = 0;          // ||M||_F
  double factorization_residual = 0;
};

LogicalAction logical_action(const Operator& h, const Code& c);

/// Closed-form logical Hamiltonian of the isotropic three-spin exchange
/// Hamiltonian on the ns3 code (angular units in, angular units out):
/// (2 J12 - J23 - J31) sigma_x + sqrt(3) (J31 - J23) sigma_y.
Operator ns3_logical_hamiltonian(double omega, double j12, double j23,
                                 double j31);

/// Physical three-spin Hamiltonian Omega S_z + sum J_jk s_jk.
Operator ns3_physical_hamiltonian(double omega, double j12, double j23,
                                  double j31);

/// Couplings indexed as J12, J13, J14, J23, J24, J34 (Hz).
struct NmrParameters {
  std::array<double, 4> nu_hz{};
  std::array<double, 6> j_hz{};

  double j(int a, int b) const;  // 1-based, order-insensitive
};

/// Strong-coupling four-spin NMR Hamiltonian: sum pi nu_j Z_j +
/// sum_{j<k} (pi/2) J_jk sigma^j . sigma^k, as Pauli terms (rad/s).
std::vector<PauliString> nmr_hamiltonian_terms(const NmrParameters& p);

/// Weak-coupling truncation: for every pair of spins whose species labels
/// differ, drops the XX and YY parts of the exchange and keeps ZZ.
std::vector<PauliString> weak_coupling_truncate(
    const std::vector<PauliString>& terms,
    const std::vector<std::string>& species);

/// Hetero-nuclear weak-coupling Hamiltonian on spins (1,2)=H, (3,4)=C.
Operator dfs2x2_physical_hamiltonian(const NmrParameters& p);

struct Dfs2x2Coefficients {
  double a = 0, b = 0, c = 0, d = 0;
};

Dfs2x2Coefficients dfs2x2_coefficients(const std::array<double, 6>& j_hz);

struct Dfs2x2Logical {
  Operator logical;  // 4x4, rad/s
  Dfs2x2Coefficients coefficients;
};

/// pi (dnu12 Z1 + dnu34 Z2 + J12 X1 + J34 X2 + D Z1 Z2) on two logical qubits.
Dfs2x2Logical dfs2x2_logical_hamiltonian(const NmrParameters& p);

struct CorrespondenceEntry {
  std::string logical;   // e.g. "pi_x^L1 pi_z^L2"
  std::string physical;  // e.g. "X1 X2 Z4"
  bool preserves_code = false;
  double fidelity = 0;  // |Tr(A^dag B)| / code_dim
  bool pass = false;
};

/// Logical pi rotation per logical qubit: 'x', 'y', 'z' or '-' for none.
Operator logical_pi_rotation(const Code& c, std::string_view axes);

/// Checks that `physical` preserves the code and restricts to the logical
/// rotation `axes` up to a global phase.
CorrespondenceEntry check_correspondence(const Code& c,
                                         const Operator& physical,
                                         std::string_view axes);

/// The six pi^L <-> physical operator pairs used by the dfs2x2 sequences.
std::vector<CorrespondenceEntry> verify_pulse_correspondence(const Code& c);

}  // namespace aht
