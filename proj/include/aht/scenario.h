#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aht/noise.h"
#include "aht/operator.h"
#include "aht/pauli.h"

namespace aht {

/// Parses one Hamiltonian term on an n-qubit register:
///   "0.5 ZZ 1 2"  coefficient, Pauli word, one 1-based qubit per letter
///   "-1 XIZ"      word covering qubits 1..len
///   "1.0 s12"     Heisenberg exchange between qubits 1 and 2
///   "2 Sz"        collective S_z (also Sx, Sy)
/// Throws ValidationError on malformed input.
std::vector<PauliString> parse_term(std::string_view term, int n_qubits);

/// Largest qubit index mentioned by a term (0 when it names none).
int term_qubit_extent(std::string_view term);

struct PulseSpec {
  std::vector<std::string> axes;  // rotation axes per qubit, or empty
  double angle = 0;
  std::string pauli;  // alternatively a Pauli word applied as a unitary

  bool operator==(const PulseSpec&) const = default;
};

struct NmrSpec {
  std::vector<double> nu_hz;
  std::vector<double> j_hz;  // J12, J13, J14, J23, J24, J34
  std::vector<std::string> species;

  bool operator==(const NmrSpec&) const = default;
};

struct NoiseSpec {
  std::string scenario;
  ScenarioParams params;

  bool operator==(const NoiseSpec&) const = default;
};

/// Everything one `run` needs. See the README for the JSON schema.
struct Scenario {
  std::string kind;  // average, project, propagate, logical, universality,
                     // noise, scan
  std::string level = "physical";  // physical, encoded, logical
  int qubits = 0;                  // 0: inferred
  std::vector<std::string> hamiltonian;
  std::string units = "rad/s";  // or Hz
  std::optional<NmrSpec> nmr;
  std::string code;
  std::string sequence;
  std::vector<PulseSpec> pulses;
  std::vector<double> durations;
  std::string group;
  double cycle_time = 1.0;
  bool first_order = false;
  std::string mode;                 // universality: lie_closure,
                                    // transformer_reach, cp_split
  std::vector<std::string> target;  // transformer_reach target terms
  std::string scan_target = "magnus_defect";  // or noise_error
  std::vector<double> sweep;
  std::optional<NoiseSpec> noise;
  std::string output_path;
  std::string format = "json";
  std::uint64_t seed = 1;

  bool operator==(const Scenario&) const = default;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);

nlohmann::json params_to_json(const ScenarioParams& p);
ScenarioParams params_from_json(const nlohmann::json& j);

/// {"re": [[..]], "im": [[..]]}; entries below 1e-14 are written as 0.
nlohmann::json matrix_to_json(const Matrix& m);
/// [{"term": "XI", "re": .., "im": ..}, ...]
nlohmann::json pauli_to_json(const Operator& op, double cutoff = 1e-12);

struct RunOutput {
  std::string text;    // rendered result in the requested format
  std::string format;  // csv or json
};

/// Dispatches on `kind`. Throws ValidationError for unresolvable input and
/// NumericalError for tolerance failures.
RunOutput run_scenario(const Scenario& s);

/// Catalog of built-in codes, sequences, groups and noise scenarios with a
/// one-line description each.
std::string list_builtins();

}  // namespace aht
