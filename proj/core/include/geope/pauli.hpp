#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geope/types.hpp"

namespace geope {

/// Single-qubit Pauli symbol. The enumeration order I < X < Y < Z fixes the
/// lexicographic ordering of Pauli words.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis. Qubit 0 is the leftmost symbol and
/// the most significant bit of a computational basis index. Every word is a
/// signed-permutation matrix; the (x_mask, zy_mask, y_count) triple encodes
/// it exactly: row r has its only nonzero in column r ^ x_mask with value
/// (-i)^y_count * (-1)^popcount(r & zy_mask).
class PauliWord {
 public:
  explicit PauliWord(std::vector<Pauli> symbols);

  /// Parses strings such as "ZZI".
  static PauliWord parse(std::string_view text);

  int qubit_count() const { return static_cast<int>(symbols_.size()); }
  Pauli symbol(int qubit) const { return symbols_.at(qubit); }
  const std::vector<Pauli>& symbols() const { return symbols_; }
  bool is_identity() const;
  std::string str() const;

  std::uint32_t x_mask() const { return x_mask_; }
  std::uint32_t zy_mask() const { return zy_mask_; }
  int y_count() const { return y_count_; }

  /// Value of the single nonzero entry in the given row.
  Complex entry_phase(std::uint32_t row) const;

  bool operator==(const PauliWord& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Pauli> symbols_;
  std::uint32_t x_mask_ = 0;
  std::uint32_t zy_mask_ = 0;
  int y_count_ = 0;
};

/// Ordered basis of all 4^n - 1 non-identity Pauli words of length n,
/// lexicographic with I < X < Y < Z.
class PauliBasis {
 public:
  explicit PauliBasis(int qubit_count);

  int qubit_count() const { return n_; }
  int dim() const { return 1 << n_; }
  int size() const { return static_cast<int>(words_.size()); }
  const PauliWord& word(int index) const { return words_.at(index); }
  const std::vector<PauliWord>& words() const { return words_; }

  /// Position of a non-identity word in the lexicographic order.
  int index_of(const PauliWord& word) const;

 private:
  int n_;
  std::vector<PauliWord> words_;
};

/// Subset of basis positions corresponding to the controllable Hamiltonian
/// terms. Indices are kept sorted; the k-th control always refers to the k-th
/// smallest basis index.
class RestrictionSet {
 public:
  RestrictionSet(const PauliBasis& basis, std::vector<int> indices);
  static RestrictionSet from_words(const PauliBasis& basis, const std::vector<PauliWord>& words);

  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  int index(int k) const { return indices_.at(k); }
  bool contains(int basis_index) const;

  std::vector<std::string> word_strings(const PauliBasis& basis) const;

 private:
  std::vector<int> indices_;
};

/// Real coefficient vector over a Pauli-word basis. Stored sparsely when the
/// support is below 10% of the basis size, densely otherwise; restricted
/// control vectors have O(n) support while full-basis vectors only appear in
/// diagnostics.
class LieVector {
 public:
  static LieVector zeros(int dim);
  static LieVector from_dense(const RVector& values);
  static LieVector from_entries(int dim, std::vector<std::pair<int, double>> entries);

  int dim() const { return dim_; }
  bool is_sparse() const { return sparse_; }
  double at(int index) const;
  double operator[](int index) const { return at(index); }

  /// Indices with nonzero coefficients, ascending.
  std::vector<int> support() const;

  /// Calls fn(index, value) for every stored nonzero entry.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    if (sparse_) {
      for (const auto& [i, v] : entries_) fn(i, v);
    } else {
      for (int i = 0; i < dim_; ++i) {
        if (dense_[i] != 0.0) fn(i, dense_[i]);
      }
    }
  }

  RVector to_dense() const;
  LieVector plus(const LieVector& other) const;

 private:
  LieVector() = default;
  void check_finite() const;

  int dim_ = 0;
  bool sparse_ = true;
  std::vector<std::pair<int, double>> entries_;  // sorted by index
  RVector dense_;
};

/// Dense N x N matrix of a Pauli word.
CMatrix word_matrix(const PauliWord& word);

/// H(theta) = sum_j theta_j G_j over the basis.
CMatrix assemble_hamiltonian(const LieVector& theta, const PauliBasis& basis);

/// Coefficients c_j = Tr(G_j M) / N for every basis word. The identity
/// (trace) component of M is deliberately dropped. Complex output: tangent
/// matrices such as U * Gamma are not Hermitian.
CVector vectorize_tangent(const CMatrix& m, const PauliBasis& basis);

/// Zeroes every coefficient outside the restriction set.
LieVector restrict_to(const LieVector& theta, const RestrictionSet& restriction);

}  // namespace geope
