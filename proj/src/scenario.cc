#include "aht/scenario.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include "aht/code.h"
#include "aht/decoupling.h"
#include "aht/error.h"
#include "aht/universality.h"

namespace aht {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("invalid " + std::string(what) + " '" + tok + "'");
}

int parse_qubit(const std::string& tok) {
  int q = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || q < 1)
    throw ValidationError("invalid qubit index '" + tok + "'");
  return q;
}

bool is_pauli_word(const std::string& w) {
  return !w.empty() && w.find_first_not_of("IXYZ") == std::string::npos;
}

bool is_exchange(const std::string& w) {
  return w.size() == 3 && w[0] == 's' && std::isdigit(w[1]) &&
         std::isdigit(w[2]);
}

bool is_collective(const std::string& w) {
  return w == "Sx" || w == "Sy" || w == "Sz";
}

}  // namespace

std::vector<PauliString> parse_term(std::string_view term, int n) {
  const auto tok = split_ws(term);
  const std::string where = " in term '" + std::string(term) + "'";
  if (tok.size() < 2)
    throw ValidationError("term needs a coefficient and an operator" + where);
  const double coeff = parse_number(tok[0], "coefficient");
  const std::string& word = tok[1];

  if (is_exchange(word)) {
    if (tok.size() != 2) throw ValidationError("unexpected qubit list" + where);
    const int j = word[1] - '0', k = word[2] - '0';
    if (j < 1 || k < 1 || j > n || k > n || j == k)
      throw ValidationError("exchange qubits out of range" + where);
    return exchange_terms(n, j, k, coeff);
  }
  if (is_collective(word)) {
    if (tok.size() != 2) throw ValidationError("unexpected qubit list" + where);
    const char letter = static_cast<char>(std::toupper(word[1]));
    std::vector<PauliString> out;
    for (int q = 1; q <= n; ++q)
      out.push_back(PauliString::on_qubits(n, std::string(1, letter), {q}, coeff));
    return out;
  }
  if (!is_pauli_word(word))
    throw ValidationError("unknown operator '" + word + "'" + where);
  if (tok.size() == 2) {
    if (static_cast<int>(word.size()) != n)
      throw ValidationError("word length " + std::to_string(word.size()) +
                            " does not match " + std::to_string(n) +
                            " qubits" + where);
    return {PauliString(word, coeff)};
  }
  if (tok.size() != word.size() + 2)
    throw ValidationError("need one qubit index per Pauli letter" + where);
  std::vector<int> qubits;
  std::set<int> seen;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    const int q = parse_qubit(tok[i]);
    if (q > n)
      throw ValidationError("qubit " + std::to_string(q) + " exceeds " +
                            std::to_string(n) + where);
    if (!seen.insert(q).second)
      throw ValidationError("repeated qubit index" + where);
    qubits.push_back(q);
  }
  return {PauliString::on_qubits(n, word, qubits, coeff)};
}

int term_qubit_extent(std::string_view term) {
  const auto tok = split_ws(term);
  if (tok.size() < 2) return 0;
  const std::string& word = tok[1];
  if (is_exchange(word)) return std::max(word[1], word[2]) - '0';
  if (is_collective(word)) return 0;
  if (tok.size() == 2) return static_cast<int>(word.size());
  int extent = 0;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    try {
      extent = std::max(extent, parse_qubit(tok[i]));
    } catch (const ValidationError&) {
    }
  }
  return extent;
}

// ---------------------------------------------------------------- JSON

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys,
                    const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ValidationError("unknown field '" + k + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

double parse_angle(const json& a) {
  if (a.is_number()) return a.get<double>();
  if (!a.is_string()) throw ValidationError("pulse angle must be a number or "
                                            "a string like \"pi/2\"");
  std::string s = a.get<std::string>();
  double sign = 1.0;
  if (!s.empty() && s.front() == '-') {
    sign = -1.0;
    s.erase(0, 1);
  }
  if (s.rfind("pi", 0) != 0)
    throw ValidationError("invalid angle '" + a.get<std::string>() + "'");
  double div = 1.0;
  if (s.size() > 2) {
    if (s[2] != '/')
      throw ValidationError("invalid angle '" + a.get<std::string>() + "'");
    div = parse_number(s.substr(3), "angle divisor");
    if (div == 0) throw ValidationError("angle divisor is zero");
  }
  return sign * std::numbers::pi / div;
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array())
    throw ValidationError(std::string("field '") + key +
                          "' must be a string or a list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      throw ValidationError(std::string("field '") + key +
                            "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

json params_to_json(const ScenarioParams& p) {
  return {{"cycle_time", p.cycle_time},   {"tau_fast", p.tau_fast},
          {"tau_slow", p.tau_slow},       {"amp_fast", p.amp_fast},
          {"amp_slow", p.amp_slow},       {"amp_logical", p.amp_logical},
          {"delta_omega", p.delta_omega}, {"j_drift", p.j_drift},
          {"total_time", p.total_time},   {"ensemble_size", p.ensemble_size},
          {"seed", p.seed},               {"encoded", p.encoded},
          {"pulses", p.pulses}};
}

ScenarioParams params_from_json(const json& j) {
  reject_unknown(j,
                 {"scenario", "cycle_time", "tau_fast", "tau_slow", "amp_fast",
                  "amp_slow", "amp_logical", "delta_omega", "j_drift",
                  "total_time", "ensemble_size", "seed", "encoded", "pulses"},
                 "noise");
  ScenarioParams p;
  p.cycle_time = get_or(j, "cycle_time", p.cycle_time);
  p.tau_fast = get_or(j, "tau_fast", p.tau_fast);
  p.tau_slow = get_or(j, "tau_slow", p.tau_slow);
  p.amp_fast = get_or(j, "amp_fast", p.amp_fast);
  p.amp_slow = get_or(j, "amp_slow", p.amp_slow);
  p.amp_logical = get_or(j, "amp_logical", p.amp_logical);
  p.delta_omega = get_or(j, "delta_omega", p.delta_omega);
  p.j_drift = get_or(j, "j_drift", p.j_drift);
  p.total_time = get_or(j, "total_time", p.total_time);
  p.ensemble_size = get_or(j, "ensemble_size", p.ensemble_size);
  p.seed = get_or(j, "seed", p.seed);
  p.encoded = get_or(j, "encoded", p.encoded);
  p.pulses = get_or(j, "pulses", p.pulses);
  return p;
}

Scenario scenario_from_json(const json& j) {
  reject_unknown(j,
                 {"kind", "level", "qubits", "hamiltonian", "units", "nmr",
                  "code", "sequence", "pulses", "durations", "group",
                  "cycle_time", "first_order", "mode", "target", "scan",
                  "noise", "output", "seed"},
                 "scenario");
  Scenario s;
  if (!j.contains("kind")) throw ValidationError("scenario has no 'kind'");
  s.kind = get_or<std::string>(j, "kind", "");
  static const std::set<std::string> kinds = {
      "average", "project", "propagate", "logical", "universality", "noise",
      "scan"};
  if (!kinds.contains(s.kind))
    throw ValidationError("unknown kind '" + s.kind + "'");
  s.code = get_or<std::string>(j, "code", "");
  s.level = get_or<std::string>(j, "level", s.code.empty() ? "physical" : "encoded");
  if (s.level != "physical" && s.level != "encoded" && s.level != "logical")
    throw ValidationError("unknown level '" + s.level + "'");
  s.qubits = get_or(j, "qubits", 0);
  s.hamiltonian = string_list(j, "hamiltonian");
  s.units = get_or<std::string>(j, "units", "rad/s");
  if (s.units != "rad/s" && s.units != "Hz")
    throw ValidationError("units must be \"rad/s\" or \"Hz\"");
  if (j.contains("nmr")) {
    const json& n = j.at("nmr");
    reject_unknown(n, {"nu_hz", "j_hz", "species"}, "nmr");
    NmrSpec nmr;
    nmr.nu_hz = get_or(n, "nu_hz", std::vector<double>(4, 0.0));
    nmr.j_hz = get_or(n, "j_hz", std::vector<double>(6, 0.0));
    nmr.species = string_list(n, "species");
    if (nmr.nu_hz.size() != 4 || nmr.j_hz.size() != 6)
      throw ValidationError("nmr needs 4 nu_hz and 6 j_hz values");
    if (!nmr.species.empty() && nmr.species.size() != 4)
      throw ValidationError("nmr species needs one label per spin");
    s.nmr = nmr;
  }
  s.sequence = get_or<std::string>(j, "sequence", "");
  if (j.contains("pulses")) {
    if (!j.at("pulses").is_array())
      throw ValidationError("'pulses' must be a list");
    for (const auto& p : j.at("pulses")) {
      reject_unknown(p, {"axes", "angle", "pauli"}, "pulse");
      PulseSpec pulse;
      pulse.axes = string_list(p, "axes");
      pulse.pauli = get_or<std::string>(p, "pauli", "");
      if (p.contains("angle")) pulse.angle = parse_angle(p.at("angle"));
      if (pulse.axes.empty() == pulse.pauli.empty())
        throw ValidationError("a pulse needs either 'axes' or 'pauli'");
      s.pulses.push_back(pulse);
    }
  }
  s.durations = get_or(j, "durations", std::vector<double>{});
  s.group = get_or<std::string>(j, "group", "");
  s.cycle_time = get_or(j, "cycle_time", 1.0);
  s.first_order = get_or(j, "first_order", false);
  s.mode = get_or<std::string>(j, "mode", "");
  s.target = string_list(j, "target");
  if (j.contains("scan")) {
    const json& sc = j.at("scan");
    reject_unknown(sc, {"parameter", "values", "target"}, "scan");
    if (get_or<std::string>(sc, "parameter", "cycle_time") != "cycle_time")
      throw ValidationError("only cycle_time can be scanned");
    s.sweep = get_or(sc, "values", std::vector<double>{});
    s.scan_target = get_or<std::string>(sc, "target", "magnus_defect");
  }
  if (j.contains("noise")) {
    NoiseSpec n;
    n.scenario = get_or<std::string>(j.at("noise"), "scenario", "");
    n.params = params_from_json(j.at("noise"));
    s.noise = n;
  }
  s.format = (s.kind == "noise" || s.kind == "scan") ? "csv" : "json";
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, {"path", "format"}, "output");
    s.output_path = get_or<std::string>(o, "path", "");
    s.format = get_or<std::string>(o, "format", s.format);
  }
  if (s.format != "csv" && s.format != "json")
    throw ValidationError("format must be csv or json");
  s.seed = get_or<std::uint64_t>(j, "seed", 1);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["kind"] = s.kind;
  j["level"] = s.level;
  if (s.qubits) j["qubits"] = s.qubits;
  if (!s.hamiltonian.empty()) j["hamiltonian"] = s.hamiltonian;
  j["units"] = s.units;
  if (s.nmr) {
    j["nmr"] = {{"nu_hz", s.nmr->nu_hz}, {"j_hz", s.nmr->j_hz}};
    if (!s.nmr->species.empty()) j["nmr"]["species"] = s.nmr->species;
  }
  if (!s.code.empty()) j["code"] = s.code;
  if (!s.sequence.empty()) j["sequence"] = s.sequence;
  if (!s.pulses.empty()) {
    json ps = json::array();
    for (const auto& p : s.pulses) {
      if (!p.pauli.empty())
        ps.push_back({{"pauli", p.pauli}});
      else
        ps.push_back({{"axes", p.axes}, {"angle", p.angle}});
    }
    j["pulses"] = ps;
  }
  if (!s.durations.empty()) j["durations"] = s.durations;
  if (!s.group.empty()) j["group"] = s.group;
  j["cycle_time"] = s.cycle_time;
  j["first_order"] = s.first_order;
  if (!s.mode.empty()) j["mode"] = s.mode;
  if (!s.target.empty()) j["target"] = s.target;
  if (!s.sweep.empty() || s.kind == "scan")
    j["scan"] = {{"parameter", "cycle_time"},
                 {"values", s.sweep},
                 {"target", s.scan_target}};
  if (s.noise) {
    json n = params_to_json(s.noise->params);
    n["scenario"] = s.noise->scenario;
    j["noise"] = n;
  }
  j["output"] = {{"format", s.format}};
  if (!s.output_path.empty()) j["output"]["path"] = s.output_path;
  j["seed"] = s.seed;
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

json matrix_to_json(const Matrix& m) {
  auto clean = [](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; };
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(clean(m(i, k).real()));
      c.push_back(clean(m(i, k).imag()));
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"re", re}, {"im", im}};
}

json pauli_to_json(const Operator& op, double cutoff) {
  json out = json::array();
  for (const auto& p : pauli_decompose(op, cutoff)) {
    json t = {{"term", p.letters}, {"re", p.coefficient.real()}};
    if (std::abs(p.coefficient.imag()) > cutoff) t["im"] = p.coefficient.imag();
    out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------- run

namespace {

struct Context {
  std::shared_ptr<const Code> code;
  int n = 0;  // qubits addressed by the Hamiltonian and the sequence
  Operator hamiltonian;
};

std::shared_ptr<const Code> resolve_code(const Scenario& s) {
  if (s.code.empty()) {
    if (s.level != "physical")
      throw ValidationError("level '" + s.level + "' needs a code");
    return nullptr;
  }
  return std::make_shared<const Code>(build_code(s.code));
}

int resolve_qubits(const Scenario& s, const Code* code) {
  if (s.level == "logical") return code->logical_qubits;
  if (s.level == "encoded") return code->n_physical;
  if (s.nmr) return 4;
  int n = s.qubits;
  if (n == 0)
    for (const auto& t : s.hamiltonian) n = std::max(n, term_qubit_extent(t));
  for (const auto& p : s.pulses)
    n = std::max(n, static_cast<int>(p.axes.empty() ? p.pauli.size()
                                                    : p.axes.size()));
  return std::max(n, 1);
}

Operator build_terms(const std::vector<std::string>& terms, int n,
                     double scale) {
  std::vector<PauliString> all;
  for (const auto& t : terms)
    for (auto& p : parse_term(t, n)) {
      p.coefficient *= scale;
      all.push_back(std::move(p));
    }
  return pauli_sum(all, n);
}

Context make_context(const Scenario& s) {
  Context c;
  c.code = resolve_code(s);
  c.n = resolve_qubits(s, c.code.get());
  if (s.qubits && s.qubits != c.n)
    throw ValidationError("'qubits' = " + std::to_string(s.qubits) +
                          " conflicts with " + std::to_string(c.n) +
                          " implied by the level/code");
  if (c.n > 5) throw ValidationError("at most 5 qubits are supported");
  const double scale = s.units == "Hz" ? kTwoPi : 1.0;
  Operator h = build_terms(s.hamiltonian, c.n, scale);
  if (s.nmr) {
    if (c.n != 4) throw ValidationError("an nmr block needs four spins");
    NmrParameters p;
    std::copy(s.nmr->nu_hz.begin(), s.nmr->nu_hz.end(), p.nu_hz.begin());
    std::copy(s.nmr->j_hz.begin(), s.nmr->j_hz.end(), p.j_hz.begin());
    auto terms = nmr_hamiltonian_terms(p);
    if (!s.nmr->species.empty())
      terms = weak_coupling_truncate(terms, s.nmr->species);
    h += pauli_sum(terms, 4);
  }
  c.hamiltonian = Operator::hermitian(h.matrix(), "H");
  return c;
}

ControlTarget make_target(const Scenario& s, const Context& c) {
  if (s.level == "encoded") return ControlTarget::encoded(c.code);
  if (s.level == "logical") return ControlTarget::logical(c.code);
  return ControlTarget::physical(c.n);
}

DecouplingScheme make_scheme(const Scenario& s, const Context& c,
                             double cycle_time) {
  const ControlTarget target = make_target(s, c);
  if (!s.sequence.empty()) {
    if (!s.pulses.empty())
      throw ValidationError("give either 'sequence' or 'pulses', not both");
    return named_sequence(s.sequence, target, cycle_time);
  }
  if (s.pulses.empty())
    throw ValidationError("kind '" + s.kind + "' needs a sequence or pulses");
  DecouplingScheme scheme;
  scheme.name = "custom";
  scheme.cycle_time = cycle_time;
  scheme.durations = s.durations;
  if (scheme.durations.empty())
    scheme.durations.assign(s.pulses.size(), 1.0 / s.pulses.size());
  if (s.level == "encoded") scheme.code = c.code;
  for (const auto& p : s.pulses) {
    if (!p.pauli.empty()) {
      const Operator u = PauliString(p.pauli).to_operator().with_label(p.pauli);
      if (u.dim() != target.dim())
        throw ValidationError("pulse '" + p.pauli +
                              "' does not match the control dimension");
      scheme.pulses.push_back(u);
    } else {
      scheme.pulses.push_back(rotation_pulse(target, p.axes, p.angle));
    }
  }
  scheme.validate();
  return scheme;
}

DecouplingSet make_group_for(const Scenario& s, const Context& c) {
  if (s.group.empty()) {
    DecouplingSet g = frames_from_scheme(make_scheme(s, c, s.cycle_time));
    if (!g.is_group)
      throw ValidationError("sequence frames do not form a group; give "
                            "'group' or use kind 'average'");
    return g;
  }
  if (s.level == "encoded")
    throw ValidationError("built-in groups act on bare or logical qubits; "
                          "use an encoded sequence instead");
  if (s.group == "transformer") {
    if (c.n != 1) throw ValidationError("the transformer group is single-qubit");
    return transformer_group();
  }
  return builtin_group(s.group, c.n);
}

json logical_json(const LogicalAction& a) {
  return {{"preserves_code", a.preserves_code},
          {"logical_part", pauli_to_json(a.logical_part)},
          {"logical_matrix", matrix_to_json(a.logical_part.matrix())},
          {"identity_offset", std::abs(a.identity_offset) < 1e-14 ? 0.0 : a.identity_offset},
          {"leakage_norm", a.leakage_norm},
          {"syndrome_nontrivial", a.syndrome_nontrivial},
          {"syndrome_norm", a.syndrome_norm},
          {"factorization_residual", a.factorization_residual}};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string pauli_csv(const Operator& op) {
  std::string out = "term,re,im\n";
  for (const auto& p : pauli_decompose(op, 1e-12))
    out += p.letters + "," + fmt(p.coefficient.real()) + "," +
           fmt(std::abs(p.coefficient.imag()) < 1e-12 ? 0.0 : p.coefficient.imag()) +
           "\n";
  return out;
}

RunOutput render(const Scenario& s, const json& j, const Operator* csv_op) {
  if (s.format == "json") return {j.dump(2) + "\n", "json"};
  if (!csv_op)
    throw ValidationError("format csv is not available for kind '" + s.kind +
                          "'");
  return {pauli_csv(*csv_op), "csv"};
}

RunOutput run_average(const Scenario& s, bool project) {
  const Context c = make_context(s);
  json j = {{"kind", s.kind}, {"level", s.level}};
  Operator avg;
  if (project) {
    const DecouplingSet g = make_group_for(s, c);
    avg = project_group(c.hamiltonian, g);
    j["group"] = s.group.empty() ? s.sequence : s.group;
    j["order"] = g.size();
  } else {
    const DecouplingSet g = frames_from_scheme(make_scheme(s, c, s.cycle_time));
    avg = average_zeroth(c.hamiltonian, g);
    j["sequence"] = s.sequence.empty() ? "custom" : s.sequence;
    j["frames"] = g.size();
    j["is_group"] = g.is_group;
  }
  j["average"] = matrix_to_json(avg.matrix());
  j["pauli"] = pauli_to_json(avg);
  if (s.level == "encoded") j["logical"] = logical_json(logical_action(avg, *c.code));
  return render(s, j, &avg);
}

RunOutput run_propagate(const Scenario& s) {
  const Context c = make_context(s);
  const DecouplingScheme scheme = make_scheme(s, c, s.cycle_time);
  const Operator u = cycle_propagator(c.hamiltonian, scheme);
  const Operator h_eff = logm_effective(u, s.cycle_time);
  const Operator h0 = average_zeroth(c.hamiltonian, frames_from_scheme(scheme));
  const Operator h1 = first_order_correction(c.hamiltonian, scheme);
  json j = {{"kind", s.kind},
            {"cycle_time", s.cycle_time},
            {"propagator", matrix_to_json(u.matrix())},
            {"effective_hamiltonian", pauli_to_json(h_eff)},
            {"zeroth_order", pauli_to_json(h0)},
            {"first_order", pauli_to_json(h1)},
            {"magnus_defect", (h_eff - h0).frobenius_norm()},
            {"magnus_defect_first_order", (h_eff - h0 - h1).frobenius_norm()}};
  return render(s, j, &h_eff);
}

RunOutput run_logical(const Scenario& s) {
  if (s.code.empty()) throw ValidationError("kind 'logical' needs a code");
  if (s.level != "encoded")
    throw ValidationError("kind 'logical' takes a physical Hamiltonian "
                          "(level 'encoded')");
  const Context c = make_context(s);
  const LogicalAction a = logical_action(c.hamiltonian, *c.code);
  json j = logical_json(a);
  j["kind"] = s.kind;
  j["code"] = s.code;
  if (s.code == "dfs2x2") {
    if (s.nmr) {
      NmrParameters p;
      std::copy(s.nmr->nu_hz.begin(), s.nmr->nu_hz.end(), p.nu_hz.begin());
      std::copy(s.nmr->j_hz.begin(), s.nmr->j_hz.end(), p.j_hz.begin());
      const Dfs2x2Logical closed = dfs2x2_logical_hamiltonian(p);
      j["closed_form"] = pauli_to_json(closed.logical);
      j["coefficients"] = {{"A", closed.coefficients.a},
                           {"B", closed.coefficients.b},
                           {"C", closed.coefficients.c},
                           {"D", closed.coefficients.d}};
    }
    json table = json::array();
    for (const auto& e : verify_pulse_correspondence(*c.code))
      table.push_back({{"logical", e.logical},
                       {"physical", e.physical},
                       {"preserves_code", e.preserves_code},
                       {"fidelity", e.fidelity},
                       {"pass", e.pass}});
    j["correspondence"] = table;
  }
  return render(s, j, &a.logical_part);
}

RunOutput run_universality(const Scenario& s) {
  const Context c = make_context(s);
  const Complex i(0, 1);
  json j = {{"kind", s.kind}, {"mode", s.mode}};
  if (s.mode == "lie_closure") {
    const Operator avg =
        s.group.empty()
            ? average_zeroth(c.hamiltonian,
                             frames_from_scheme(make_scheme(s, c, s.cycle_time)))
            : project_group(c.hamiltonian, make_group_for(s, c));
    const int d = c.hamiltonian.dim();
    const LieBasis l = lie_closure({i * c.hamiltonian, i * avg}, d * d);
    json basis = json::array();
    for (const auto& b : l.basis) basis.push_back(pauli_to_json(Complex(0, -1) * b, 1e-10));
    j["dimension"] = l.dimension;
    j["truncated"] = l.truncated;
    j["verdict"] = universality_verdict(l);
    j["basis"] = basis;
  } else if (s.mode == "cp_split") {
    const DecouplingScheme scheme = make_scheme(s, c, s.cycle_time);
    const CpSplit split = cp_split(c.hamiltonian, scheme.pulses.front());
    j["symmetric"] = pauli_to_json(split.symmetric);
    j["antisymmetric"] = pauli_to_json(split.antisymmetric);
  } else if (s.mode == "transformer_reach") {
    Scenario g = s;
    if (g.group.empty()) g.group = "transformer";
    const DecouplingSet group = make_group_for(g, c);
    const Operator target = build_terms(s.target, c.n, s.units == "Hz" ? kTwoPi : 1.0);
    const ReachResult r = transformer_reach(group, c.hamiltonian, target);
    j["group"] = g.group;
    j["reachable"] = r.reachable;
    j["weights"] = r.weights;
    j["scale"] = r.scale;
    j["residual"] = r.residual;
  } else {
    throw ValidationError("universality mode must be lie_closure, cp_split or "
                          "transformer_reach");
  }
  return render(s, j, nullptr);
}

NoiseScenario noise_for(const Scenario& s, double cycle_time) {
  if (!s.noise) throw ValidationError("kind '" + s.kind + "' needs a noise block");
  ScenarioParams p = s.noise->params;
  p.seed = s.seed;
  if (cycle_time > 0) p.cycle_time = cycle_time;
  return build_scenario(s.noise->scenario, p);
}

RunOutput run_noise(const Scenario& s) {
  const NoiseScenario ns = noise_for(s, 0);
  const DecayCurve c = ensemble_coherence(ns);
  ScenarioParams echoed = s.noise->params;
  echoed.seed = s.seed;
  json params = params_to_json(echoed);
  params["scenario"] = s.noise->scenario;
  if (s.format == "csv") return {decay_curve_csv(c, {params.dump()}), "csv"};
  json j = {{"kind", s.kind},
            {"params", params},
            {"time_s", c.time},
            {"mean_coherence", c.mean},
            {"std_error", c.std_error},
            {"n_traj", c.n_traj}};
  return {j.dump(2) + "\n", "json"};
}

RunOutput run_scan(const Scenario& s) {
  if (s.sweep.empty()) throw ValidationError("scan needs at least one value");
  std::vector<double> value, err;
  if (s.scan_target == "magnus_defect") {
    const Context c = make_context(s);
    for (double tc : s.sweep)
      value.push_back(
          magnus_defect(c.hamiltonian, make_scheme(s, c, tc), s.first_order));
    err.assign(value.size(), 0.0);
  } else if (s.scan_target == "noise_error") {
    for (double tc : s.sweep) {
      ScenarioParams p = s.noise ? s.noise->params : ScenarioParams{};
      const DecayCurve curve = ensemble_coherence(noise_for(s, tc));
      value.push_back(1.0 - curve.mean.back());
      err.push_back(curve.std_error.back());
      (void)p;
    }
  } else {
    throw ValidationError("scan target must be magnus_defect or noise_error");
  }
  json rows = json::array();
  std::string csv = "cycle_time,value,std_error,ratio\n";
  for (std::size_t k = 0; k < value.size(); ++k) {
    json row = {{"cycle_time", s.sweep[k]}, {"value", value[k]}, {"std_error", err[k]}};
    std::string ratio;
    if (k > 0 && value[k] != 0) {
      row["ratio"] = value[k - 1] / value[k];
      ratio = fmt(value[k - 1] / value[k]);
    }
    rows.push_back(row);
    csv += fmt(s.sweep[k]) + "," + fmt(value[k]) + "," + fmt(err[k]) + "," +
           ratio + "\n";
  }
  if (s.format == "csv") return {csv, "csv"};
  json j = {{"kind", s.kind}, {"target", s.scan_target}, {"rows", rows}};
  return {j.dump(2) + "\n", "json"};
}

}  // namespace

RunOutput run_scenario(const Scenario& s) {
  if (s.kind == "average") return run_average(s, false);
  if (s.kind == "project") return run_average(s, true);
  if (s.kind == "propagate") return run_propagate(s);
  if (s.kind == "logical") return run_logical(s);
  if (s.kind == "universality") return run_universality(s);
  if (s.kind == "noise") return run_noise(s);
  if (s.kind == "scan") return run_scan(s);
  throw ValidationError("unknown kind '" + s.kind + "'");
}

std::string list_builtins() {
  std::ostringstream os;
  os << "codes:\n"
     << "  ns3      three spins; one logical qubit carried by the two total-spin-1/2\n"
     << "           doublets, immune to collective noise\n"
     << "  dfs2     two spins; zero-quantum subspace span{|01>, |10>}\n"
     << "  dfs2x2   four spins; dfs2 blocks on pairs (1,2) and (3,4)\n"
     << "sequences:\n"
     << "  cp_x             two pi_x pulses, intervals 1/2 1/2\n"
     << "  cp_x_symmetric   time-symmetric cp_x, intervals 1/4 1/2 1/4\n"
     << "  cp_y             two pi_y pulses, intervals 1/2 1/2\n"
     << "  whh4             four pi/2 pulses x, -y, y, -x; averages dipolar couplings\n"
     << "  gmax_cycle       pi_x, pi_z, pi_x, pi_z; visits every Pauli frame\n"
     << "  s1_selective_x1  encoded; keeps only sigma_x on logical qubit 1\n"
     << "  s1_selective_x2  encoded; keeps only sigma_x on logical qubit 2\n"
     << "  zz_extractor     encoded; keeps only the logical ZZ coupling\n"
     << "groups:\n"
     << "  cp_x cp_y cp_z   {I, pi_a on every qubit}\n"
     << "  gmax             all Pauli strings (complete averaging)\n"
     << "  transformer      24-element single-qubit group generated by iX, iY, iZ\n"
     << "                   and a 2pi/3 rotation about (1,1,1)\n"
     << "scenarios:\n"
     << "  hybrid_dephasing      fast collective plus slow independent dephasing on\n"
     << "                        two spins, with or without dfs2 encoding\n"
     << "  encoded_spin_boson    dfs2 qubit with a logical sigma_x drift\n"
     << "  encoded_depolarizing  dfs2 qubit with logical sigma_x noise; encoded\n"
     << "                        Pauli annihilator cycle\n"
     << "  four_qubit_blockwise  pairwise-correlated dephasing on dfs2x2\n";
  return os.str();
}

}  // namespace aht
