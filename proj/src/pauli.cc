#include "aht/pauli.h"

#include <cmath>

#include "aht/error.h"

namespace aht {

namespace {

bool valid_letter(char c) {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

}  // namespace

PauliString::PauliString(std::string word, Complex coeff)
    : n(static_cast<int>(word.size())),
      letters(std::move(word)),
      coefficient(coeff) {
  if (n == 0) throw ValidationError("PauliString: empty word");
  for (char c : letters)
    if (!valid_letter(c))
      throw ValidationError(std::string("PauliString: invalid letter '") + c +
                            "'");
}

PauliString PauliString::on_qubits(int n, std::string_view word,
                                   const std::vector<int>& qubits,
                                   Complex coeff) {
  if (word.size() != qubits.size())
    throw ValidationError("PauliString: word length " +
                          std::to_string(word.size()) + " does not match " +
                          std::to_string(qubits.size()) + " qubit indices");
  std::string letters(static_cast<std::size_t>(n), 'I');
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int q = qubits[i];
    if (q < 1 || q > n)
      throw ValidationError("PauliString: qubit index " + std::to_string(q) +
                            " out of range 1.." + std::to_string(n));
    if (letters[q - 1] != 'I')
      throw ValidationError("PauliString: qubit " + std::to_string(q) +
                            " listed twice");
    letters[q - 1] = word[i];
  }
  return PauliString(std::move(letters), coeff);
}

Matrix pauli_matrix(char letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError(std::string("pauli_matrix: invalid letter '") +
                            letter + "'");
  }
  return m;
}

Operator PauliString::to_operator() const {
  Matrix m = pauli_matrix(letters.at(0));
  for (std::size_t i = 1; i < letters.size(); ++i)
    m = kron(m, pauli_matrix(letters[i]));
  return Operator(coefficient * m, to_string(*this));
}

Operator pauli_sum(const std::vector<PauliString>& terms, int n) {
  if (n < 1) throw ValidationError("pauli_sum: qubit count must be positive");
  const int dim = 1 << n;
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.n != n)
      throw ValidationError("pauli_sum: term '" + t.letters + "' has " +
                            std::to_string(t.n) + " qubits, expected " +
                            std::to_string(n));
    acc += t.to_operator().matrix();
  }
  return Operator(std::move(acc));
}

Operator pauli_sum(const std::vector<PauliString>& terms) {
  if (terms.empty())
    throw ValidationError("pauli_sum: qubit count needed for empty list");
  return pauli_sum(terms, terms.front().n);
}

Operator sigma(int n, char letter, int qubit) {
  return PauliString::on_qubits(n, std::string(1, letter), {qubit})
      .to_operator();
}

std::vector<PauliString> exchange_terms(int n, int j, int k, double coeff) {
  return {PauliString::on_qubits(n, "XX", {j, k}, coeff),
          PauliString::on_qubits(n, "YY", {j, k}, coeff),
          PauliString::on_qubits(n, "ZZ", {j, k}, coeff)};
}

Operator exchange(int n, int j, int k) {
  return pauli_sum(exchange_terms(n, j, k), n)
      .with_label("s" + std::to_string(j) + std::to_string(k));
}

Operator collective(int n, char letter) {
  Operator acc = Operator::zero(1 << n);
  for (int q = 1; q <= n; ++q) acc += sigma(n, letter, q);
  return acc.with_label(std::string("S_") + static_cast<char>(letter - 'A' + 'a'));
}

std::vector<PauliString> all_pauli_strings(int n) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  const long long count = 1LL << (2 * n);
  out.reserve(static_cast<std::size_t>(count));
  for (long long idx = 0; idx < count; ++idx) {
    std::string word(static_cast<std::size_t>(n), 'I');
    long long rest = idx;
    for (int q = n - 1; q >= 0; --q) {
      word[q] = kLetters[rest % 4];
      rest /= 4;
    }
    out.emplace_back(std::move(word));
  }
  return out;
}

std::vector<PauliString> pauli_decompose(const Operator& op, double cutoff) {
  std::vector<PauliString> out;
  for (auto& p : all_pauli_strings(op.num_qubits())) {
    const Complex c = inner_product(p.to_operator(), op);
    if (std::abs(c) > cutoff) {
      p.coefficient = c;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string to_string(const PauliString& p) {
  std::string s;
  if (p.coefficient != Complex(1.0, 0.0)) {
    if (p.coefficient.imag() == 0.0) {
      s = std::to_string(p.coefficient.real()) + " ";
    } else {
      s = "(" + std::to_string(p.coefficient.real()) + "," +
          std::to_string(p.coefficient.imag()) + ") ";
    }
  }
  return s + p.letters;
}

}  // namespace aht
