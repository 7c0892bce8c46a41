#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aht/tolerances.h"

namespace aht {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense operator on an n-qubit (or n-logical-qubit) space.
///
/// The side length is always a power of two. Operators are plain values;
/// the optional label is carried along for reports and never affects
/// arithmetic.
class Operator {
 public:
  Operator() : Operator(Matrix::Zero(1, 1)) {}
  explicit Operator(Matrix m, std::string label = {});

  static Operator identity(int dim);
  static Operator zero(int dim);
  /// Throws ValidationError unless `m` is Hermitian to kTol.hermiticity
  /// (relative to its max entry). With `remove_trace` the identity
  /// component is subtracted.
  static Operator hermitian(Matrix m, std::string label = {},
                            bool remove_trace = false);
  /// Throws ValidationError unless `m` is unitary to kTol.unitarity.
  static Operator unitary(Matrix m, std::string label = {});

  int dim() const { return static_cast<int>(m_.rows()); }
  int num_qubits() const;
  const Matrix& matrix() const { return m_; }
  const std::string& label() const { return label_; }
  Operator with_label(std::string label) const;

  bool is_hermitian(double tol = kTol.hermiticity) const;
  bool is_unitary(double tol = kTol.unitarity) const;

  Operator adjoint() const;
  Complex trace() const { return m_.trace(); }
  double max_abs() const;
  double frobenius_norm() const { return m_.norm(); }
  double spectral_norm() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix m_;
  std::string label_;
};

bool is_power_of_two(long long n);

/// Max-norm distance ||A - B||_max.
double distance(const Operator& a, const Operator& b);
/// |Tr(A^dag B)| / dim; equals 1 iff two unitaries agree up to a global phase.
double phase_insensitive_overlap(const Operator& a, const Operator& b);
bool equal_up_to_phase(const Operator& a, const Operator& b,
                       double tol = kTol.equality);

/// Returns U^dag H U. Throws ValidationError when U is not unitary to
/// kTol.unitary_check or the dimensions differ.
Operator conjugate(const Operator& h, const Operator& u);

/// exp(-i H t) for Hermitian H.
Operator expm(const Operator& h, double t);

/// Hermitian H_eff with exp(-i H_eff T) = U, eigenphases taken in (-pi, pi].
/// Throws NumericalError when an eigenphase sits within kTol.branch_cut of
/// +-pi, where the logarithm is ambiguous.
Operator logm_effective(const Operator& u, double period);

Operator commutator(const Operator& a, const Operator& b);
/// Tr(A^dag B) / dim.
Complex inner_product(const Operator& a, const Operator& b);

Operator kron(const Operator& a, const Operator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Real eigenvalues of a Hermitian operator, ascending.
std::vector<double> eigenvalues_hermitian(const Operator& h);

}  // namespace aht
