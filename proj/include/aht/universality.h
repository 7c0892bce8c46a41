#pragma once

#include <string>
#include <vector>

#include "aht/decoupling.h"
#include "aht/operator.h"

namespace aht {

/// Real Lie algebra spanned by iterated commutators of anti-Hermitian
/// generators. Basis elements are orthonormal under Re Tr(A^dag B) / dim.
struct LieBasis {
  std::vector<Operator> generators;
  std::vector<Operator> basis;
  int dimension = 0;
  bool truncated = false;  // max_dim was reached before closure
};

/// Commutator closure with Gram-Schmidt novelty test: a candidate is new
/// when its component orthogonal to the current basis exceeds `novelty`
/// relative to its own norm. Throws ValidationError on non-anti-Hermitian
/// generators or mixed dimensions.
LieBasis lie_closure(const std::vector<Operator>& generators, int max_dim,
                     double novelty = 1e-8);

/// Largest residual of [b_i, b_j] outside span(basis); zero for a closed
/// algebra.
double closure_defect(const LieBasis& l);

/// "su(N)" when the closure has dimension N^2 - 1, "u(N)" for N^2,
/// otherwise "dim k < N^2 - 1".
std::string universality_verdict(const LieBasis& l);

struct CpSplit {
  Operator symmetric;      // (H + pi^dag H pi) / 2
  Operator antisymmetric;  // (H - pi^dag H pi) / 2
};

/// Splits H into parts even and odd under an involutive pulse. Throws
/// ValidationError unless pi is unitary with pi^2 proportional to I.
CpSplit cp_split(const Operator& h, const Operator& pi);

struct ReachResult {
  bool reachable = false;
  std::vector<double> weights;  // tau_k >= 0, sum 1 (empty when unreachable)
  double scale = 0;             // lambda > 0
  double residual = 0;          // relative to ||target||_F
};

/// Looks for tau_k >= 0 with sum tau_k = 1 and lambda > 0 such that
/// sum_k tau_k U_k^dag A U_k = lambda target. A single orbit element parallel
/// to the target is preferred; otherwise nonnegative least squares decides.
/// Throws ValidationError for a zero A or a zero target.
ReachResult transformer_reach(const DecouplingSet& group, const Operator& a,
                              const Operator& target,
                              double tol = 1e-8);

/// Nonnegative least squares min ||M x - b|| subject to x >= 0
/// (Lawson-Hanson active set).
Eigen::VectorXd nnls(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                     int max_iterations = 10000);

enum class PhaseMode { modulo_phase, exact };

/// Closes the generators under multiplication, starting from the identity.
/// In modulo_phase mode elements equal up to a global phase are identified.
/// Throws ValidationError if more than max_order elements appear.
DecouplingSet generate_group(const std::vector<Operator>& generators,
                             int max_order,
                             PhaseMode mode = PhaseMode::modulo_phase);

/// Single-qubit transformer generators {i sigma_x, i sigma_y, i sigma_z, R},
/// R = exp(-i (2 pi / 3) n.sigma / 2) with n = (1, 1, 1)/sqrt 3.
std::vector<Operator> transformer_generators();

/// Exact closure of the transformer generators: the 24-element binary
/// tetrahedral group (12 elements modulo phase).
DecouplingSet transformer_group();

}  // namespace aht
