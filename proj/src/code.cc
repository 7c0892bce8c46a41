#include "aht/code.h"

#include <cmath>
#include <numbers>

#include "aht/error.h"

namespace aht {

namespace {

Vector basis_state(int n, int index) {
  Vector v = Vector::Zero(1 << n);
  v(index) = 1.0;
  return v;
}

// Index of the computational basis state given as a bit string, qubit 1 first.
int index_of(std::string_view bits) {
  int idx = 0;
  for (char b : bits) idx = 2 * idx + (b == '1' ? 1 : 0);
  return idx;
}

// Zero-quantum DFS observables for the pair (a, b) of an n-qubit register:
// z = (Z_a - Z_b)/2, x = (X_a X_b + Y_a Y_b)/2, y = (Y_a X_b - X_a Y_b)/2.
void add_pair_observables(Code& code, int n, int a, int b, int logical) {
  auto term = [&](std::string_view w, double c) {
    return PauliString::on_qubits(n, w, {a, b}, c);
  };
  code.logical_observables[{Axis::z, logical}] =
      pauli_sum({PauliString::on_qubits(n, "Z", {a}, 0.5),
                 PauliString::on_qubits(n, "Z", {b}, -0.5)},
                n)
          .with_label("sz^L" + std::to_string(logical));
  code.logical_observables[{Axis::x, logical}] =
      pauli_sum({term("XX", 0.5), term("YY", 0.5)}, n)
          .with_label("sx^L" + std::to_string(logical));
  code.logical_observables[{Axis::y, logical}] =
      pauli_sum({term("YX", 0.5), term("XY", -0.5)}, n)
          .with_label("sy^L" + std::to_string(logical));
}

Code make_dfs2() {
  Code c;
  c.name = "dfs2";
  c.n_physical = 2;
  c.logical_qubits = 1;
  c.logical_dim = 2;
  c.syndrome_dim = 1;
  c.isometry = Matrix::Zero(4, 2);
  c.isometry.col(0) = basis_state(2, index_of("01"));
  c.isometry.col(1) = basis_state(2, index_of("10"));
  add_pair_observables(c, 2, 1, 2, 1);
  return c;
}

Code make_dfs2x2() {
  Code c;
  c.name = "dfs2x2";
  c.n_physical = 4;
  c.logical_qubits = 2;
  c.logical_dim = 4;
  c.syndrome_dim = 1;
  c.isometry = Matrix::Zero(16, 4);
  const char* pair_states[2] = {"01", "10"};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.isometry.col(2 * i + j) = basis_state(
          4, index_of(std::string(pair_states[i]) + pair_states[j]));
  add_pair_observables(c, 4, 1, 2, 1);
  add_pair_observables(c, 4, 3, 4, 2);
  return c;
}

// Three spins under collective noise. The two J = 1/2 doublets are built by
// Clebsch-Gordan coupling (spins 1,2 to singlet/triplet, then spin 3); the
// logical basis inside the doublet multiplicity space is then rotated so that
// SWAP_12 restricts to sigma_x and -(sqrt3/6)(s23 - s31) to sigma_y.
Code make_ns3() {
  constexpr int n = 3;
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);

  // m = +1/2 members, |0> = spin up.
  Vector a_up = (basis_state(n, index_of("010")) -
                 basis_state(n, index_of("100"))) /
                r2;
  Vector b_up = (2.0 * basis_state(n, index_of("001")) -
                 basis_state(n, index_of("010")) -
                 basis_state(n, index_of("100"))) /
                r6;

  // Lowering operator S_- = sum_j |1><0|_j keeps the S_3 action
  // identical across the two syndrome states.
  Matrix lower = Matrix::Zero(8, 8);
  for (int q = 1; q <= n; ++q)
    lower += 0.5 * (sigma(n, 'X', q).matrix() -
                    Complex(0, 1) * sigma(n, 'Y', q).matrix());
  Vector a_dn = lower * a_up;
  Vector b_dn = lower * b_up;
  a_dn.normalize();
  b_dn.normalize();

  Matrix doublets(8, 4);  // column = doublet * 2 + syndrome
  doublets.col(0) = a_up;
  doublets.col(1) = a_dn;
  doublets.col(2) = b_up;
  doublets.col(3) = b_dn;

  const Operator s12 = exchange(n, 1, 2);
  const Operator s23 = exchange(n, 2, 3);
  const Operator s31 = exchange(n, 3, 1);
  const Operator id = Operator::identity(8);
  const Operator sx = ((id + s12) * 0.5).with_label("sx^L1");
  const Operator sy =
      ((s23 - s31) * (-std::sqrt(3.0) / 6.0)).with_label("sy^L1");

  auto logical_block = [&](const Operator& op) {
    Matrix r = doublets.adjoint() * op.matrix() * doublets;
    Matrix l = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        l(i, j) = 0.5 * (r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1));
    return l;
  };
  const Matrix x_l = logical_block(sx);
  const Matrix y_l = logical_block(sy);
  const Matrix z_l = Complex(0, -0.5) * (x_l * y_l - y_l * x_l);

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (z_l + z_l.adjoint()));
  Vector e0 = es.eigenvectors().col(1);  // eigenvalue +1
  Vector e1 = x_l * e0;
  Matrix change(2, 2);
  change.col(0) = e0;
  change.col(1) = e1;
  if (distance(Operator(change.adjoint() * y_l * change),
               Operator(pauli_matrix('Y'))) > 1e-12)
    throw NumericalError("ns3: no logical basis realizes both observables");

  Code c;
  c.name = "ns3";
  c.n_physical = n;
  c.logical_qubits = 1;
  c.logical_dim = 2;
  c.syndrome_dim = 2;
  c.isometry = Matrix::Zero(8, 4);
  for (int l = 0; l < 2; ++l)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        c.isometry.col(2 * l + z) += change(a, l) * doublets.col(2 * a + z);

  c.logical_observables[{Axis::x, 1}] = sx;
  c.logical_observables[{Axis::y, 1}] = sy;
  c.logical_observables[{Axis::z, 1}] =
      Operator(Complex(0, -0.5) * commutator(sx, sy).matrix(), "sz^L1");
  return c;
}

}  // namespace

char axis_letter(Axis a) {
  switch (a) {
    case Axis::x:
      return 'X';
    case Axis::y:
      return 'Y';
    case Axis::z:
      return 'Z';
  }
  return '?';
}

Axis parse_axis(char c) {
  switch (c) {
    case 'x':
    case 'X':
      return Axis::x;
    case 'y':
    case 'Y':
      return Axis::y;
    case 'z':
    case 'Z':
      return Axis::z;
    default:
      throw ValidationError(std::string("unknown axis '") + c + "'");
  }
}

const Operator& Code::observable(Axis a, int qubit) const {
  auto it = logical_observables.find({a, qubit});
  if (it == logical_observables.end())
    throw ValidationError("code " + name + " has no logical qubit " +
                          std::to_string(qubit));
  return it->second;
}

Matrix Code::restrict(const Operator& h) const {
  if (h.dim() != physical_dim())
    throw ValidationError("code " + name + ": operator dimension " +
                          std::to_string(h.dim()) + " does not match " +
                          std::to_string(physical_dim()));
  return isometry.adjoint() * h.matrix() * isometry;
}

double Code::leakage(const Operator& h) const {
  const Matrix hv = h.matrix() * isometry;
  return (hv - isometry * (isometry.adjoint() * hv)).norm();
}

Vector Code::encode(const Vector& logical_state, int syndrome) const {
  if (logical_state.size() != logical_dim)
    throw ValidationError("code " + name + ": logical state has wrong size");
  Vector out = Vector::Zero(physical_dim());
  for (int l = 0; l < logical_dim; ++l)
    out += logical_state(l) * isometry.col(l * syndrome_dim + syndrome);
  return out;
}

Code build_code(std::string_view name) {
  if (name == "ns3") return make_ns3();
  if (name == "dfs2") return make_dfs2();
  if (name == "dfs2x2") return make_dfs2x2();
  throw ValidationError("unknown code '" + std::string(name) + "'");
}

std::vector<std::string> builtin_code_names() {
  return {"ns3", "dfs2", "dfs2x2"};
}

LogicalAction logical_action(const Operator& h, const Code& c) {
  const Matrix r = c.restrict(h);
  const int nl = c.logical_dim;
  const int nz = c.syndrome_dim;
  const Complex offset = r.trace() / static_cast<double>(nl * nz);

  Matrix l = Matrix::Zero(nl, nl);
  Matrix m = Matrix::Zero(nz, nz);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nl; ++b)
      for (int z = 0; z < nz; ++z) l(a, b) += r(a * nz + z, b * nz + z);
  for (int y = 0; y < nz; ++y)
    for (int z = 0; z < nz; ++z)
      for (int a = 0; a < nl; ++a) m(y, z) += r(a * nz + y, a * nz + z);
  l /= static_cast<double>(nz);
  m /= static_cast<double>(nl);
  l.diagonal().array() -= offset;
  m.diagonal().array() -= offset;

  const Matrix rebuilt =
      kron(l, Matrix::Identity(nz, nz)) + kron(Matrix::Identity(nl, nl), m) +
      offset * Matrix::Identity(nl * nz, nl * nz);
  const double tol = kTol.equality * std::max(1.0, h.max_abs());

  LogicalAction out;
  out.leakage_norm = c.leakage(h);
  out.preserves_code = out.leakage_norm < kTol.equality;
  out.logical_part = Operator(std::move(l), "L");
  out.identity_offset = offset.real();
  out.syndrome_norm = m.norm();
  out.factorization_residual = (r - rebuilt).norm();
  out.syndrome_nontrivial =
      out.syndrome_norm > tol || out.factorization_residual > tol;
  return out;
}

Operator ns3_logical_hamiltonian(double omega, double j12, double j23,
                                 double j31) {
  (void)omega;  // S_z acts on the syndrome factor only
  return pauli_sum({PauliString("X", 2 * j12 - j23 - j31),
                    PauliString("Y", std::sqrt(3.0) * (j31 - j23))},
                   1)
      .with_label("H_S^L(ns3)");
}

Operator ns3_physical_hamiltonian(double omega, double j12, double j23,
                                  double j31) {
  return (omega * collective(3, 'Z') + j12 * exchange(3, 1, 2) +
          j23 * exchange(3, 2, 3) + j31 * exchange(3, 3, 1))
      .with_label("H_S(ns3)");
}

double NmrParameters::j(int a, int b) const {
  if (a > b) std::swap(a, b);
  static constexpr int kIndex[5][5] = {{-1, -1, -1, -1, -1},
                                       {-1, -1, 0, 1, 2},
                                       {-1, -1, -1, 3, 4},
                                       {-1, -1, -1, -1, 5},
                                       {-1, -1, -1, -1, -1}};
  if (a < 1 || b > 4 || a == b)
    throw ValidationError("NmrParameters: invalid spin pair");
  return j_hz[kIndex[a][b]];
}

std::vector<PauliString> nmr_hamiltonian_terms(const NmrParameters& p) {
  constexpr int n = 4;
  const double pi = std::numbers::pi;
  std::vector<PauliString> terms;
  for (int q = 1; q <= n; ++q)
    terms.push_back(PauliString::on_qubits(n, "Z", {q}, pi * p.nu_hz[q - 1]));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (auto& t : exchange_terms(n, a, b, 0.5 * pi * p.j(a, b)))
        terms.push_back(std::move(t));
  return terms;
}

std::vector<PauliString> weak_coupling_truncate(
    const std::vector<PauliString>& terms,
    const std::vector<std::string>& species) {
  std::vector<PauliString> out;
  for (const auto& t : terms) {
    if (static_cast<int>(species.size()) != t.n)
      throw ValidationError("weak_coupling_truncate: need one species label "
                            "per qubit");
    std::vector<int> support;
    for (int q = 0; q < t.n; ++q)
      if (t.letters[q] != 'I') support.push_back(q);
    const bool transverse_pair =
        support.size() == 2 &&
        t.letters[support[0]] == t.letters[support[1]] &&
        (t.letters[support[0]] == 'X' || t.letters[support[0]] == 'Y');
    if (transverse_pair && species[support[0]] != species[support[1]])
      continue;
    out.push_back(t);
  }
  return out;
}

Operator dfs2x2_physical_hamiltonian(const NmrParameters& p) {
  return pauli_sum(weak_coupling_truncate(nmr_hamiltonian_terms(p),
                                          {"H", "H", "C", "C"}),
                   4)
      .with_label("H_S(nmr, weak hetero)");
}

Dfs2x2Coefficients dfs2x2_coefficients(const std::array<double, 6>& j) {
  const double j13 = j[1], j14 = j[2], j23 = j[3], j24 = j[4];
  Dfs2x2Coefficients c;
  c.a = (j13 + j14 + j23 + j24) / 8.0;
  c.b = (j13 - j14 + j23 - j24) / 4.0;
  c.c = (j13 + j14 - j23 - j24) / 4.0;
  // Z_j Z_k with Z_1 = S/2 + Z^L1, Z_2 = S/2 - Z^L1 carries the full
  // (pi/2) J prefactor onto Z^L1 Z^L2.
  c.d = (j13 - j14 - j23 + j24) / 2.0;
  return c;
}

Dfs2x2Logical dfs2x2_logical_hamiltonian(const NmrParameters& p) {
  const double pi = std::numbers::pi;
  Dfs2x2Logical out;
  out.coefficients = dfs2x2_coefficients(p.j_hz);
  const double dnu12 = p.nu_hz[0] - p.nu_hz[1];
  const double dnu34 = p.nu_hz[2] - p.nu_hz[3];
  out.logical = pauli_sum({PauliString("ZI", pi * dnu12),
                           PauliString("IZ", pi * dnu34),
                           PauliString("XI", pi * p.j(1, 2)),
                           PauliString("IX", pi * p.j(3, 4)),
                           PauliString("ZZ", pi * out.coefficients.d)},
                          2)
                    .with_label("H_S^L(dfs2x2)");
  return out;
}

Operator logical_pi_rotation(const Code& c, std::string_view axes) {
  if (static_cast<int>(axes.size()) != c.logical_qubits)
    throw ValidationError("logical rotation needs one axis per logical qubit");
  Matrix m = Matrix::Identity(1, 1);
  for (char a : axes) {
    const Matrix factor = a == '-' ? Matrix(Matrix::Identity(2, 2))
                                   : Matrix(Complex(0, -1) *
                                            pauli_matrix(axis_letter(parse_axis(a))));
    m = kron(m, factor);
  }
  return Operator(std::move(m));
}

CorrespondenceEntry check_correspondence(const Code& c,
                                         const Operator& physical,
                                         std::string_view axes) {
  CorrespondenceEntry e;
  e.physical = physical.label();
  for (std::size_t q = 0; q < axes.size(); ++q) {
    if (axes[q] == '-') continue;
    if (!e.logical.empty()) e.logical += ' ';
    e.logical += std::string("pi_") + axes[q] + "^L" + std::to_string(q + 1);
  }
  e.preserves_code = c.leakage(physical) < kTol.equality;
  const Matrix restricted = c.restrict(physical);
  const Matrix target =
      kron(logical_pi_rotation(c, axes).matrix(),
           Matrix::Identity(c.syndrome_dim, c.syndrome_dim));
  e.fidelity = std::abs((restricted.adjoint() * target).trace()) / c.code_dim();
  e.pass = e.preserves_code && e.fidelity >= 1.0 - kTol.equality;
  return e;
}

std::vector<CorrespondenceEntry> verify_pulse_correspondence(const Code& c) {
  if (c.n_physical != 4 || c.logical_qubits != 2)
    throw ValidationError("pulse correspondence table is defined for a pair "
                          "of two-spin DFS qubits");
  struct Row {
    const char* axes;
    const char* word;
    std::vector<int> qubits;
    const char* label;
  };
  const std::vector<Row> rows = {
      {"x-", "XX", {1, 2}, "X1 X2"},
      {"-x", "XX", {3, 4}, "X3 X4"},
      {"xx", "XXXX", {1, 2, 3, 4}, "X1 X2 X3 X4"},
      {"xz", "XXZ", {1, 2, 4}, "X1 X2 Z4"},
      {"zx", "ZXX", {2, 3, 4}, "Z2 X3 X4"},
      {"zz", "ZZ", {2, 4}, "Z2 Z4"},
  };
  std::vector<CorrespondenceEntry> out;
  for (const auto& row : rows) {
    const Operator phys =
        PauliString::on_qubits(4, row.word, row.qubits).to_operator().with_label(
            row.label);
    out.push_back(check_correspondence(c, phys, row.axes));
  }
  return out;
}

}  // namespace aht
