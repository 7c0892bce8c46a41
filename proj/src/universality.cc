#include "aht/universality.h"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "aht/error.h"
#include "aht/pauli.h"

namespace aht {

namespace {

double real_inner(const Operator& a, const Operator& b) {
  return inner_product(a, b).real();
}

// Component of `v` orthogonal to the basis, two Gram-Schmidt passes.
Operator orthogonal_part(Operator v, const std::vector<Operator>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= real_inner(b, v) * b;
  return v;
}

double pair_norm(const Operator& a) { return std::sqrt(real_inner(a, a)); }

bool try_add(const Operator& candidate, std::vector<Operator>& basis,
             double novelty) {
  const double n0 = pair_norm(candidate);
  if (n0 < 1e-14) return false;
  Operator r = orthogonal_part(candidate, basis);
  const double n1 = pair_norm(r);
  if (n1 <= novelty * n0) return false;
  r *= 1.0 / n1;
  basis.push_back(std::move(r));
  return true;
}

Eigen::VectorXd flatten(const Matrix& m) {
  Eigen::VectorXd v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      v(k++) = m(i, j).real();
      v(k++) = m(i, j).imag();
    }
  return v;
}

}  // namespace

LieBasis lie_closure(const std::vector<Operator>& generators, int max_dim,
                     double novelty) {
  if (generators.empty())
    throw ValidationError("lie_closure: no generators");
  if (max_dim < 1) throw ValidationError("lie_closure: max_dim must be >= 1");
  const int d = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != d)
      throw ValidationError("lie_closure: generator dimensions differ");
    if (!(Complex(0, 1) * g).is_hermitian(1e-10))
      throw ValidationError("lie_closure: generator '" + g.label() +
                            "' is not anti-Hermitian");
  }

  LieBasis out;
  out.generators = generators;
  for (const auto& g : generators) {
    if (static_cast<int>(out.basis.size()) >= max_dim) {
      out.truncated = true;
      break;
    }
    try_add(g, out.basis, novelty);
  }
  // Commutators of every pair, including pairs with elements added on the way.
  bool full = static_cast<int>(out.basis.size()) >= max_dim;
  for (std::size_t j = 1; j < out.basis.size() && !full; ++j) {
    for (std::size_t i = 0; i < j && !full; ++i) {
      const Operator c = commutator(out.basis[i], out.basis[j]);
      if (try_add(c, out.basis, novelty))
        full = static_cast<int>(out.basis.size()) >= max_dim;
    }
  }
  if (full) {
    LieBasis probe;
    probe.basis = out.basis;
    out.truncated = out.truncated || closure_defect(probe) > novelty;
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

double closure_defect(const LieBasis& l) {
  double worst = 0;
  for (std::size_t i = 0; i < l.basis.size(); ++i)
    for (std::size_t j = i + 1; j < l.basis.size(); ++j) {
      const Operator c = commutator(l.basis[i], l.basis[j]);
      worst = std::max(worst, pair_norm(orthogonal_part(c, l.basis)));
    }
  return worst;
}

std::string universality_verdict(const LieBasis& l) {
  if (l.basis.empty()) return "dim 0";
  const int n = l.basis.front().dim();
  if (l.dimension == n * n - 1) return "su(" + std::to_string(n) + ")";
  if (l.dimension == n * n) return "u(" + std::to_string(n) + ")";
  return "dim " + std::to_string(l.dimension) + " < " +
         std::to_string(n * n - 1);
}

CpSplit cp_split(const Operator& h, const Operator& pi) {
  if (h.dim() != pi.dim()) throw ValidationError("cp_split: dimension mismatch");
  if (!pi.is_unitary(kTol.unitary_check))
    throw ValidationError("cp_split: pulse is not unitary");
  if (!equal_up_to_phase(pi * pi, Operator::identity(pi.dim())))
    throw ValidationError("cp_split: pulse is not an involution");
  const Operator flipped = conjugate(h, pi);
  return {(0.5 * (h + flipped)).with_label(h.label() + "^s"),
          (0.5 * (h - flipped)).with_label(h.label() + "^a")};
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                     int max_iterations) {
  const Eigen::Index n = m.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double eps = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()) *
                     std::max(1.0, b.cwiseAbs().maxCoeff());

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = 0; k < n; ++k)
      if (passive[k]) idx.push_back(k);
    Eigen::MatrixXd sub(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      sub.col(static_cast<Eigen::Index>(c)) = m.col(idx[c]);
    const Eigen::VectorXd s = sub.completeOrthogonalDecomposition().solve(b);
    z.setZero(n);
    for (std::size_t c = 0; c < idx.size(); ++c)
      z(idx[c]) = s(static_cast<Eigen::Index>(c));
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    const Eigen::VectorXd w = m.transpose() * (b - m * x);
    Eigen::Index best = -1;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!passive[k] && w(k) > eps && (best < 0 || w(k) > w(best))) best = k;
    if (best < 0) break;
    passive[best] = true;

    Eigen::VectorXd z;
    for (int inner = 0; inner < max_iterations; ++inner) {
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && z(k) <= 0) feasible = false;
      if (feasible) break;
      double alpha = 1.0;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && z(k) <= 0)
          alpha = std::min(alpha, x(k) / (x(k) - z(k)));
      x += alpha * (z - x);
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && x(k) <= eps) {
          passive[k] = false;
          x(k) = 0;
        }
    }
    x = z;
  }
  return x;
}

ReachResult transformer_reach(const DecouplingSet& group, const Operator& a,
                              const Operator& target, double tol) {
  if (group.frames.empty())
    throw ValidationError("transformer_reach: empty group");
  if (a.dim() != group.dim() || target.dim() != group.dim())
    throw ValidationError("transformer_reach: dimension mismatch");
  if (a.frobenius_norm() < kTol.equality)
    throw ValidationError("transformer_reach: A is the zero operator");
  if (target.frobenius_norm() < kTol.equality)
    throw ValidationError("transformer_reach: target is the zero operator");

  const double t_norm = target.frobenius_norm();
  const Eigen::VectorXd t = flatten(target.matrix()) / t_norm;
  std::vector<Eigen::VectorXd> orbit;
  for (const auto& u : group.frames)
    orbit.push_back(flatten(conjugate(a, u).matrix()));

  ReachResult out;
  const std::size_t n = orbit.size();

  // Single element parallel to the target.
  for (std::size_t k = 0; k < n; ++k) {
    const double c = orbit[k].dot(t);
    if (c <= 0) continue;
    const double res = (orbit[k] - c * t).norm() / orbit[k].norm();
    if (res < tol) {
      out.reachable = true;
      out.weights.assign(n, 0.0);
      out.weights[k] = 1.0;
      out.scale = c / t_norm;
      out.residual = res;
      return out;
    }
  }

  Eigen::MatrixXd m(t.size(), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) m.col(static_cast<Eigen::Index>(k)) = orbit[k];
  const Eigen::VectorXd w = nnls(m, t);
  out.residual = (m * w - t).norm();
  const double total = w.sum();
  if (out.residual < tol && total > 0) {
    out.reachable = true;
    out.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k)
      out.weights[k] = w(static_cast<Eigen::Index>(k)) / total;
    // sum w U^dag A U = target / ||target||, so lambda ||target|| = 1 / sum w.
    out.scale = 1.0 / (total * t_norm);
  }
  return out;
}

DecouplingSet generate_group(const std::vector<Operator>& generators,
                             int max_order, PhaseMode mode) {
  if (generators.empty())
    throw ValidationError("generate_group: no generators");
  const int d = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != d)
      throw ValidationError("generate_group: generator dimensions differ");
    if (!g.is_unitary(kTol.unitary_check))
      throw ValidationError("generate_group: generator '" + g.label() +
                            "' is not unitary");
  }
  auto key = [mode](const Matrix& m) {
    return mode == PhaseMode::exact ? exact_key(m) : phase_key(m);
  };

  std::vector<Operator> elements = {Operator::identity(d).with_label("I")};
  std::unordered_set<std::string> seen = {key(elements[0].matrix())};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Matrix prod = elements[i].matrix() * g.matrix();
      if (!seen.insert(key(prod)).second) continue;
      if (static_cast<int>(elements.size()) >= max_order)
        throw ValidationError("generate_group: closure not reached within " +
                              std::to_string(max_order) + " elements");
      elements.emplace_back(std::move(prod),
                            elements[i].label() == "I"
                                ? g.label()
                                : elements[i].label() + " " + g.label());
    }
  }
  DecouplingSet out;
  out.weights.assign(elements.size(), 1.0 / static_cast<double>(elements.size()));
  out.frames = std::move(elements);
  out.is_group = true;
  return out;
}

std::vector<Operator> transformer_generators() {
  const Complex i(0, 1);
  const Operator n_sigma =
      (collective(1, 'X') + collective(1, 'Y') + collective(1, 'Z')) *
      (1.0 / std::sqrt(3.0));
  return {(i * sigma(1, 'X', 1)).with_label("iX"),
          (i * sigma(1, 'Y', 1)).with_label("iY"),
          (i * sigma(1, 'Z', 1)).with_label("iZ"),
          expm(n_sigma, std::numbers::pi / 3).with_label("R")};
}

DecouplingSet transformer_group() {
  return generate_group(transformer_generators(), 64, PhaseMode::exact);
}

}  // namespace aht
