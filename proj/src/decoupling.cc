#include "aht/decoupling.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <cstring>
#include <unordered_set>

#include "aht/error.h"
#include "aht/pauli.h"

namespace aht {

namespace {

constexpr double kPi = std::numbers::pi;

std::string rounded_key(const Matrix& m, double grid) {
  std::vector<long long> cells;
  cells.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      cells.push_back(std::llround(m(i, j).real() / grid));
      cells.push_back(std::llround(m(i, j).imag() / grid));
    }
  return std::string(reinterpret_cast<const char*>(cells.data()),
                     cells.size() * sizeof(long long));
}

// Matrices the group structure is judged on: the code-space restriction for
// encoded schemes, the operators themselves otherwise.
std::vector<Operator> effective_frames(const std::vector<Operator>& frames,
                                       const Code* code) {
  if (!code) return frames;
  std::vector<Operator> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.emplace_back(code->restrict(f));
  return out;
}

bool uniform_weights(const std::vector<double>& w) {
  for (double x : w)
    if (std::abs(x - 1.0 / static_cast<double>(w.size())) > kTol.weights_sum)
      return false;
  return true;
}

std::vector<Operator> toggling_hamiltonians(const Operator& h,
                                            const DecouplingSet& g) {
  std::vector<Operator> out;
  out.reserve(g.frames.size());
  for (const auto& u : g.frames) out.push_back(conjugate(h, u));
  return out;
}

}  // namespace

int DecouplingScheme::dim() const {
  return pulses.empty() ? 0 : pulses.front().dim();
}

void DecouplingScheme::validate() const {
  const std::string who = "scheme '" + name + "': ";
  if (pulses.empty()) throw ValidationError(who + "no pulses");
  const std::size_t k = pulses.size();
  if (durations.size() != k && durations.size() != k + 1)
    throw ValidationError(who + "expected " + std::to_string(k) + " or " +
                          std::to_string(k + 1) + " durations, got " +
                          std::to_string(durations.size()));
  if (!(cycle_time > 0.0))
    throw ValidationError(who + "cycle time must be positive");
  double total = 0.0;
  for (double tau : durations) {
    if (!(tau > 0.0))
      throw ValidationError(who + "relative durations must be positive");
    total += tau;
  }
  if (std::abs(total - 1.0) > kTol.weights_sum)
    throw ValidationError(who + "relative durations sum to " +
                          std::to_string(total) + ", not 1");
  const int d = dim();
  for (const auto& p : pulses) {
    if (p.dim() != d) throw ValidationError(who + "pulse dimensions differ");
    if (!p.is_unitary(kTol.unitary_check))
      throw ValidationError(who + "pulse '" + p.label() + "' is not unitary");
  }
  if (code && code->physical_dim() != d)
    throw ValidationError(who + "pulses do not act on the code's space");

  Operator product = Operator::identity(d);
  for (const auto& p : pulses) product = p * product;
  const bool cyclic =
      code ? std::abs(1.0 - std::abs(code->restrict(product).trace()) /
                                code->code_dim()) <= kTol.equality
           : equal_up_to_phase(product, Operator::identity(d));
  if (!cyclic)
    throw ValidationError(who +
                          "pulse product is not the identity (not cyclic)");
}

std::string phase_key(const Matrix& m, double grid) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > 1e-4)
        return rounded_key((std::conj(m(i, j)) / std::abs(m(i, j))) * m, grid);
  return rounded_key(m, grid);
}

std::string exact_key(const Matrix& m, double grid) {
  return rounded_key(m, grid);
}

bool is_closed_group(const std::vector<Operator>& elements) {
  if (elements.empty()) return false;
  std::unordered_set<std::string> keys;
  for (const auto& e : elements) {
    if (!e.is_unitary(kTol.unitary_check)) return false;
    if (!keys.insert(phase_key(e.matrix())).second) return false;  // duplicate
  }
  const int d = elements.front().dim();
  if (!keys.contains(phase_key(Matrix::Identity(d, d)))) return false;
  for (const auto& a : elements) {
    if (!keys.contains(phase_key(a.matrix().adjoint()))) return false;
    for (const auto& b : elements)
      if (!keys.contains(phase_key(a.matrix() * b.matrix()))) return false;
  }
  return true;
}

DecouplingSet make_group(std::vector<Operator> elements) {
  if (!is_closed_group(elements))
    throw ValidationError("decoupling set is not a group modulo phase");
  DecouplingSet g;
  g.weights.assign(elements.size(), 1.0 / static_cast<double>(elements.size()));
  g.frames = std::move(elements);
  g.is_group = true;
  return g;
}

DecouplingSet frames_from_scheme(const DecouplingScheme& s) {
  s.validate();
  DecouplingSet g;
  g.weights = s.durations;
  Operator u = Operator::identity(s.dim());
  for (std::size_t m = 0; m < s.durations.size(); ++m) {
    if (m > 0) u = s.pulses[m - 1] * u;
    g.frames.push_back(u.with_label("U_" + std::to_string(m)));
  }
  g.is_group = uniform_weights(g.weights) &&
               is_closed_group(effective_frames(g.frames, s.code.get()));
  return g;
}

Operator average_zeroth(const Operator& h, const DecouplingSet& g) {
  if (g.frames.empty() || g.frames.size() != g.weights.size())
    throw ValidationError("average_zeroth: frames and weights do not match");
  if (h.dim() != g.dim())
    throw ValidationError("average_zeroth: dimension mismatch");
  double total = 0.0;
  for (double w : g.weights) {
    if (w < 0.0) throw ValidationError("average_zeroth: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kTol.weights_sum)
    throw ValidationError("average_zeroth: weights are not normalized");
  Operator acc = Operator::zero(h.dim());
  for (std::size_t k = 0; k < g.frames.size(); ++k)
    acc += g.weights[k] * conjugate(h, g.frames[k]);
  return acc.with_label("Lambda(" + h.label() + ")");
}

Operator project_group(const Operator& h, const DecouplingSet& g) {
  if (!g.is_group || !uniform_weights(g.weights))
    throw ValidationError("project_group: input is not a uniformly weighted "
                          "decoupling group");
  return average_zeroth(h, g).with_label("Pi(" + h.label() + ")");
}

Operator first_order_correction(const Operator& h, const DecouplingScheme& s) {
  const DecouplingSet g = frames_from_scheme(s);
  const auto hm = toggling_hamiltonians(h, g);
  Operator acc = Operator::zero(h.dim());
  for (std::size_t m = 0; m < hm.size(); ++m)
    for (std::size_t n = 0; n < m; ++n)
      acc += (g.weights[m] * g.weights[n]) * commutator(hm[m], hm[n]);
  return (Complex(0.0, -0.5 * s.cycle_time) * acc).with_label("H^(1)");
}

Operator cycle_propagator(const Operator& h, const DecouplingScheme& s) {
  const DecouplingSet g = frames_from_scheme(s);
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (std::size_t m = 0; m < g.frames.size(); ++m) {
    const Matrix& f = g.frames[m].matrix();
    const Operator step = expm(h, g.weights[m] * s.cycle_time);
    u = f.adjoint() * step.matrix() * f * u;
  }
  return Operator(std::move(u), "U(T_c)");
}

double magnus_defect(const Operator& h, const DecouplingScheme& s,
                     bool subtract_first_order) {
  const Operator h_eff = logm_effective(cycle_propagator(h, s), s.cycle_time);
  Operator reference = average_zeroth(h, frames_from_scheme(s));
  if (subtract_first_order) reference += first_order_correction(h, s);
  return (h_eff - reference).frobenius_norm();
}

ControlTarget ControlTarget::physical(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5)
    throw ValidationError("qubit count must be in 1..5");
  ControlTarget t;
  t.level_ = Level::physical;
  t.n_ = n_qubits;
  for (int q = 1; q <= n_qubits; ++q)
    for (char a : {'X', 'Y', 'Z'}) t.paulis_.push_back(aht::sigma(n_qubits, a, q));
  return t;
}

ControlTarget ControlTarget::encoded(std::shared_ptr<const Code> code) {
  if (!code) throw ValidationError("encoded control target needs a code");
  ControlTarget t;
  t.level_ = Level::encoded;
  t.n_ = code->logical_qubits;
  t.code_ = std::move(code);
  return t;
}

ControlTarget ControlTarget::logical(std::shared_ptr<const Code> code) {
  if (!code) throw ValidationError("logical control target needs a code");
  ControlTarget t = physical(code->logical_qubits);
  t.level_ = Level::logical;
  t.code_ = std::move(code);
  return t;
}

int ControlTarget::qubits() const { return n_; }

int ControlTarget::dim() const {
  return level_ == Level::encoded ? code_->physical_dim() : (1 << n_);
}

const Operator& ControlTarget::sigma(Axis a, int q) const {
  if (q < 1 || q > n_)
    throw ValidationError("control target has no qubit " + std::to_string(q));
  if (level_ == Level::encoded) return code_->observable(a, q);
  return paulis_[3 * (q - 1) + static_cast<int>(a)];
}

Operator rotation_pulse(const ControlTarget& t,
                        const std::vector<std::string>& axes, double angle) {
  if (static_cast<int>(axes.size()) != t.qubits())
    throw ValidationError("rotation pulse needs one axis per qubit (" +
                          std::to_string(t.qubits()) + ")");
  Operator generator = Operator::zero(t.dim());
  std::string label;
  for (int q = 1; q <= t.qubits(); ++q) {
    const std::string& tok = axes[q - 1];
    if (tok == "i" || tok == "I") continue;
    double sign = 1.0;
    std::string_view ax = tok;
    if (!ax.empty() && (ax.front() == '-' || ax.front() == '+')) {
      sign = ax.front() == '-' ? -1.0 : 1.0;
      ax.remove_prefix(1);
    }
    if (ax.size() != 1)
      throw ValidationError("invalid rotation axis '" + tok + "'");
    generator += sign * t.sigma(parse_axis(ax.front()), q);
    if (!label.empty()) label += ' ';
    label += "R_" + tok + "^" + std::to_string(q);
  }
  return expm(generator, angle / 2.0).with_label(label.empty() ? "I" : label);
}

DecouplingScheme named_sequence(std::string_view name, const ControlTarget& t,
                                double cycle_time) {
  const int n = t.qubits();
  auto all = [n](const std::string& a) {
    return std::vector<std::string>(static_cast<std::size_t>(n), a);
  };
  auto pulse = [&](const std::vector<std::string>& axes, double angle) {
    return rotation_pulse(t, axes, angle);
  };

  DecouplingScheme s;
  s.name = std::string(name);
  s.cycle_time = cycle_time;
  if (t.level() == ControlTarget::Level::encoded) s.code = t.code();
  if (t.code())
    s.name += "@" + t.code()->name +
              (t.level() == ControlTarget::Level::logical ? ":logical" : "");

  if (name == "cp_x" || name == "cp_y") {
    const auto p = pulse(all(name == "cp_x" ? "x" : "y"), kPi);
    s.pulses = {p, p};
    s.durations = {0.5, 0.5};
  } else if (name == "cp_x_symmetric") {
    const auto p = pulse(all("x"), kPi);
    s.pulses = {p, p};
    s.durations = {0.25, 0.5, 0.25};
  } else if (name == "whh4") {
    s.pulses = {pulse(all("x"), kPi / 2), pulse(all("-y"), kPi / 2),
                pulse(all("y"), kPi / 2), pulse(all("-x"), kPi / 2)};
    s.durations = {1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 6, 1.0 / 6};
  } else if (name == "gmax_cycle") {
    const auto px = pulse(all("x"), kPi);
    const auto pz = pulse(all("z"), kPi);
    s.pulses = {px, pz, px, pz};
    s.durations = {0.25, 0.25, 0.25, 0.25};
  } else if (name == "s1_selective_x1" || name == "s1_selective_x2" ||
             name == "zz_extractor") {
    if (!t.code())
      throw ValidationError("sequence '" + std::string(name) +
                            "' is encoded and needs a code");
    if (n != 2)
      throw ValidationError("sequence '" + std::string(name) +
                            "' needs two logical qubits");
    const std::vector<std::string> alt =
        name == "s1_selective_x1"   ? std::vector<std::string>{"x", "z"}
        : name == "s1_selective_x2" ? std::vector<std::string>{"z", "x"}
                                    : std::vector<std::string>{"z", "z"};
    const auto pxx = pulse({"x", "x"}, kPi);
    const auto palt = pulse(alt, kPi);
    s.pulses = {pxx, palt, pxx, palt};
    s.durations = {0.25, 0.25, 0.25, 0.25};
  } else {
    throw ValidationError("unknown sequence '" + std::string(name) + "'");
  }
  s.validate();
  return s;
}

DecouplingScheme named_sequence(std::string_view name, int n_qubits,
                                double cycle_time) {
  return named_sequence(name, ControlTarget::physical(n_qubits), cycle_time);
}

std::vector<std::string> builtin_sequence_names() {
  return {"cp_x",       "cp_x_symmetric",  "cp_y",
          "whh4",       "gmax_cycle",      "s1_selective_x1",
          "s1_selective_x2", "zz_extractor"};
}

DecouplingSet builtin_group(std::string_view name, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5)
    throw ValidationError("qubit count must be in 1..5");
  std::vector<Operator> elements;
  if (name == "cp_x" || name == "cp_y" || name == "cp_z") {
    const char letter = static_cast<char>(name.back() - 'a' + 'A');
    elements = {Operator::identity(1 << n_qubits),
                PauliString(std::string(n_qubits, letter)).to_operator()};
  } else if (name == "gmax") {
    for (const auto& p : all_pauli_strings(n_qubits))
      elements.push_back(p.to_operator());
  } else {
    throw ValidationError("unknown group '" + std::string(name) + "'");
  }
  // Pauli groups are closed by construction; skipping the O(|G|^2) check
  // keeps gmax on five qubits usable.
  DecouplingSet g;
  g.weights.assign(elements.size(), 1.0 / static_cast<double>(elements.size()));
  g.frames = std::move(elements);
  g.is_group = true;
  return g;
}

std::vector<std::string> builtin_group_names() {
  return {"cp_x", "cp_y", "cp_z", "gmax"};
}

}  // namespace aht
