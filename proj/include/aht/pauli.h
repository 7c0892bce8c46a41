#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aht/operator.h"

namespace aht {

/// Tensor product of single-qubit Paulis with a complex coefficient.
/// letters[0] acts on qubit 1, the most significant bit of the basis index.
struct PauliString {
  int n = 1;
  std::string letters;  // one of I, X, Y, Z per qubit
  Complex coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::string word, Complex coeff = 1.0);

  /// Places `word` on the listed 1-based qubits of an n-qubit register,
  /// e.g. on_qubits(4, "ZZ", {1, 3}).
  static PauliString on_qubits(int n, std::string_view word,
                               const std::vector<int>& qubits,
                               Complex coeff = 1.0);

  Operator to_operator() const;
  bool operator==(const PauliString&) const = default;
};

Matrix pauli_matrix(char letter);

/// Sum of coefficient-weighted Pauli strings on n qubits. An empty list gives
/// the zero operator. Throws ValidationError on mismatched qubit counts.
Operator pauli_sum(const std::vector<PauliString>& terms, int n);
Operator pauli_sum(const std::vector<PauliString>& terms);

/// Single-qubit Pauli `letter` on 1-based `qubit`.
Operator sigma(int n, char letter, int qubit);

/// Heisenberg exchange sigma^j . sigma^k on 1-based qubits j, k.
std::vector<PauliString> exchange_terms(int n, int j, int k, double coeff = 1.0);
Operator exchange(int n, int j, int k);

/// Collective S_a = sum_j sigma_a^j.
Operator collective(int n, char letter);

/// Expansion over the 4^n Pauli strings; coefficients below `cutoff` are
/// dropped. Coefficients are Tr(P O) / dim.
std::vector<PauliString> pauli_decompose(const Operator& op,
                                         double cutoff = 1e-14);

/// All 4^n coefficient-1 Pauli strings in lexicographic I<X<Y<Z order.
std::vector<PauliString> all_pauli_strings(int n);

std::string to_string(const PauliString& p);

}  // namespace aht
