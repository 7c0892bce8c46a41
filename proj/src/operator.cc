#include "aht/operator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "aht/error.h"

namespace aht {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.rows() << " vs " << b.rows()
       << ")";
    throw ValidationError(os.str());
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

Operator::Operator(Matrix m, std::string label)
    : m_(std::move(m)), label_(std::move(label)) {
  if (m_.rows() != m_.cols())
    throw ValidationError("Operator: matrix is not square");
  if (!is_power_of_two(m_.rows()))
    throw ValidationError("Operator: dimension " + std::to_string(m_.rows()) +
                          " is not a power of two");
}

Operator Operator::identity(int dim) {
  return Operator(Matrix::Identity(dim, dim), "I");
}

Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::hermitian(Matrix m, std::string label, bool remove_trace) {
  Operator op(std::move(m), std::move(label));
  if (!op.is_hermitian())
    throw ValidationError("Operator '" + op.label_ + "' is not Hermitian");
  if (remove_trace) {
    const Complex tr = op.m_.trace() / static_cast<double>(op.dim());
    op.m_.diagonal().array() -= tr;
  }
  return op;
}

Operator Operator::unitary(Matrix m, std::string label) {
  Operator op(std::move(m), std::move(label));
  if (!op.is_unitary())
    throw ValidationError("Operator '" + op.label_ + "' is not unitary");
  return op;
}

int Operator::num_qubits() const {
  int n = 0;
  while ((1 << n) < dim()) ++n;
  return n;
}

Operator Operator::with_label(std::string label) const {
  Operator out = *this;
  out.label_ = std::move(label);
  return out;
}

bool Operator::is_hermitian(double tol) const {
  const double scale = std::max(1.0, aht::max_abs(m_));
  return aht::max_abs(m_ - m_.adjoint()) <= tol * scale;
}

bool Operator::is_unitary(double tol) const {
  return aht::max_abs(m_.adjoint() * m_ - Matrix::Identity(dim(), dim())) <=
         tol;
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), label_); }

double Operator::max_abs() const { return aht::max_abs(m_); }

double Operator::spectral_norm() const {
  Eigen::JacobiSVD<Matrix> svd(m_);
  return svd.singularValues()(0);
}

Operator& Operator::operator+=(const Operator& o) {
  require_same_dim(m_, o.m_, "operator+");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_dim(m_, o.m_, "operator-");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.m_, b.m_, "operator*");
  return Operator(a.m_ * b.m_);
}

double distance(const Operator& a, const Operator& b) {
  require_same_dim(a.matrix(), b.matrix(), "distance");
  return max_abs(a.matrix() - b.matrix());
}

double phase_insensitive_overlap(const Operator& a, const Operator& b) {
  require_same_dim(a.matrix(), b.matrix(), "phase_insensitive_overlap");
  return std::abs((a.matrix().adjoint() * b.matrix()).trace()) / a.dim();
}

bool equal_up_to_phase(const Operator& a, const Operator& b, double tol) {
  return std::abs(1.0 - phase_insensitive_overlap(a, b)) <= tol;
}

Operator conjugate(const Operator& h, const Operator& u) {
  require_same_dim(h.matrix(), u.matrix(), "conjugate");
  if (!u.is_unitary(kTol.unitary_check))
    throw ValidationError("conjugate: U is not unitary");
  return Operator(u.matrix().adjoint() * h.matrix() * u.matrix(), h.label());
}

Operator expm(const Operator& h, double t) {
  if (!h.is_hermitian())
    throw ValidationError("expm: generator is not Hermitian");
  const Matrix& m = h.matrix();
  if (is_diagonal(m)) {
    Matrix out = Matrix::Zero(h.dim(), h.dim());
    for (int i = 0; i < h.dim(); ++i)
      out(i, i) = std::exp(Complex(0.0, -m(i, i).real() * t));
    return Operator(std::move(out));
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -w(i) * t));
  const Matrix& v = es.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

Operator logm_effective(const Operator& u, double period) {
  if (!(period > 0.0))
    throw ValidationError("logm_effective: period must be positive");
  if (!u.is_unitary(kTol.unitary_check))
    throw ValidationError("logm_effective: input is not unitary");
  // A unitary is normal, so its complex Schur form is diagonal and the Schur
  // vectors are an orthonormal eigenbasis even for degenerate spectra.
  Eigen::ComplexSchur<Matrix> schur(u.matrix());
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Eigen::VectorXd energies(u.dim());
  for (int i = 0; i < u.dim(); ++i) {
    double theta = std::arg(t(i, i));
    if (std::numbers::pi - std::abs(theta) < kTol.branch_cut) {
      std::ostringstream os;
      os << "logm_effective: eigenphase " << theta
         << " lies on the branch cut at +-pi";
      throw NumericalError(os.str());
    }
    energies(i) = -theta / period;
  }
  Matrix h = q * energies.cast<Complex>().asDiagonal() * q.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  return Operator(std::move(h), "H_eff");
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a.matrix(), b.matrix(), "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Complex inner_product(const Operator& a, const Operator& b) {
  require_same_dim(a.matrix(), b.matrix(), "inner_product");
  return (a.matrix().adjoint() * b.matrix()).trace() /
         static_cast<double>(a.dim());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()));
}

std::vector<double> eigenvalues_hermitian(const Operator& h) {
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& w = es.eigenvalues();
  return {w.data(), w.data() + w.size()};
}

}  // namespace aht
