#include "geope/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace geope {

namespace {

constexpr Complex kMinusIPowers[4] = {
    Complex(1.0, 0.0), Complex(0.0, -1.0), Complex(-1.0, 0.0), Complex(0.0, 1.0)};

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::invalid_argument("pauli_char: invalid symbol");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("pauli_from_char: invalid symbol '") + c + "'");
  }
}

PauliWord::PauliWord(std::vector<Pauli> symbols) : symbols_(std::move(symbols)) {
  const int n = static_cast<int>(symbols_.size());
  if (n < 1) throw std::invalid_argument("PauliWord: empty symbol sequence");
  if (n > 16) throw std::invalid_argument("PauliWord: more than 16 qubits not supported");
  for (int q = 0; q < n; ++q) {
    const std::uint32_t bit = 1u << (n - 1 - q);
    switch (symbols_[q]) {
      case Pauli::I: break;
      case Pauli::X: x_mask_ |= bit; break;
      case Pauli::Y: x_mask_ |= bit; zy_mask_ |= bit; ++y_count_; break;
      case Pauli::Z: zy_mask_ |= bit; break;
    }
  }
}

PauliWord PauliWord::parse(std::string_view text) {
  std::vector<Pauli> symbols;
  symbols.reserve(text.size());
  for (char c : text) symbols.push_back(pauli_from_char(c));
  return PauliWord(std::move(symbols));
}

bool PauliWord::is_identity() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::string PauliWord::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Pauli p : symbols_) out.push_back(pauli_char(p));
  return out;
}

Complex PauliWord::entry_phase(std::uint32_t row) const {
  const int sign_bits = std::popcount(row & zy_mask_);
  const Complex base = kMinusIPowers[y_count_ & 3];
  return (sign_bits & 1) ? -base : base;
}

PauliBasis::PauliBasis(int qubit_count) : n_(qubit_count) {
  if (n_ < 1) throw std::invalid_argument("PauliBasis: qubit count must be >= 1");
  if (n_ > 8) throw std::invalid_argument("PauliBasis: qubit count above 8 not supported");
  const std::uint64_t total = 1ull << (2 * n_);
  words_.reserve(total - 1);
  // The base-4 value of a word (I=0..Z=3, qubit 0 most significant) is its
  // lexicographic rank; value 0 is the excluded all-identity word.
  for (std::uint64_t value = 1; value < total; ++value) {
    std::vector<Pauli> symbols(n_);
    for (int q = 0; q < n_; ++q) {
      symbols[q] = static_cast<Pauli>((value >> (2 * (n_ - 1 - q))) & 3);
    }
    words_.emplace_back(std::move(symbols));
  }
}

int PauliBasis::index_of(const PauliWord& word) const {
  if (word.qubit_count() != n_) {
    throw std::invalid_argument("PauliBasis::index_of: qubit count mismatch");
  }
  std::uint64_t value = 0;
  for (int q = 0; q < n_; ++q) {
    value = (value << 2) | static_cast<std::uint64_t>(word.symbol(q));
  }
  if (value == 0) throw std::invalid_argument("PauliBasis::index_of: identity word is not in the basis");
  return static_cast<int>(value - 1);
}

RestrictionSet::RestrictionSet(const PauliBasis& basis, std::vector<int> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("RestrictionSet: empty restriction");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (indices_.front() < 0 || indices_.back() >= basis.size()) {
    throw std::invalid_argument("RestrictionSet: index out of range for basis");
  }
}

RestrictionSet RestrictionSet::from_words(const PauliBasis& basis,
                                          const std::vector<PauliWord>& words) {
  std::vector<int> indices;
  indices.reserve(words.size());
  for (const auto& w : words) indices.push_back(basis.index_of(w));
  return RestrictionSet(basis, std::move(indices));
}

bool RestrictionSet::contains(int basis_index) const {
  return std::binary_search(indices_.begin(), indices_.end(), basis_index);
}

std::vector<std::string> RestrictionSet::word_strings(const PauliBasis& basis) const {
  std::vector<std::string> out;
  out.reserve(indices_.size());
  for (int i : indices_) out.push_back(basis.word(i).str());
  return out;
}

LieVector LieVector::zeros(int dim) {
  LieVector v;
  v.dim_ = dim;
  v.sparse_ = true;
  return v;
}

LieVector LieVector::from_dense(const RVector& values) {
  std::vector<std::pair<int, double>> entries;
  for (int i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.emplace_back(i, values[i]);
  }
  LieVector v;
  v.dim_ = static_cast<int>(values.size());
  if (10 * static_cast<int>(entries.size()) < v.dim_) {
    v.sparse_ = true;
    v.entries_ = std::move(entries);
  } else {
    v.sparse_ = false;
    v.dense_ = values;
  }
  v.check_finite();
  return v;
}

LieVector LieVector::from_entries(int dim, std::vector<std::pair<int, double>> entries) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first < 0 || entries[i].first >= dim) {
      throw std::invalid_argument("LieVector: entry index out of range");
    }
    if (i > 0 && entries[i].first == entries[i - 1].first) {
      throw std::invalid_argument("LieVector: duplicate entry index");
    }
  }
  std::erase_if(entries, [](const auto& e) { return e.second == 0.0; });
  LieVector v;
  v.dim_ = dim;
  if (10 * static_cast<int>(entries.size()) < dim) {
    v.sparse_ = true;
    v.entries_ = std::move(entries);
  } else {
    v.sparse_ = false;
    v.dense_ = RVector::Zero(dim);
    for (const auto& [i, x] : entries) v.dense_[i] = x;
  }
  v.check_finite();
  return v;
}

void LieVector::check_finite() const {
  bool ok = true;
  for_each([&](int, double x) { ok = ok && std::isfinite(x); });
  if (!ok) throw std::invalid_argument("LieVector: non-finite coefficient");
}

double LieVector::at(int index) const {
  if (index < 0 || index >= dim_) throw std::out_of_range("LieVector::at");
  if (!sparse_) return dense_[index];
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0.0;
}

std::vector<int> LieVector::support() const {
  std::vector<int> out;
  for_each([&](int i, double) { out.push_back(i); });
  return out;
}

RVector LieVector::to_dense() const {
  RVector out = RVector::Zero(dim_);
  for_each([&](int i, double x) { out[i] = x; });
  return out;
}

LieVector LieVector::plus(const LieVector& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("LieVector::plus: dimension mismatch");
  RVector sum = to_dense() + other.to_dense();
  return from_dense(sum);
}

CMatrix word_matrix(const PauliWord& word) {
  const int n = word.qubit_count();
  const std::uint32_t dim = 1u << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    m(r, r ^ word.x_mask()) = word.entry_phase(r);
  }
  return m;
}

CMatrix assemble_hamiltonian(const LieVector& theta, const PauliBasis& basis) {
  if (theta.dim() != basis.size()) {
    throw std::invalid_argument("assemble_hamiltonian: coefficient dimension does not match basis");
  }
  const std::uint32_t dim = static_cast<std::uint32_t>(basis.dim());
  CMatrix h = CMatrix::Zero(dim, dim);
  theta.for_each([&](int j, double coeff) {
    const PauliWord& w = basis.word(j);
    for (std::uint32_t r = 0; r < dim; ++r) {
      h(r, r ^ w.x_mask()) += coeff * w.entry_phase(r);
    }
  });
  return h;
}

CVector vectorize_tangent(const CMatrix& m, const PauliBasis& basis) {
  const std::uint32_t dim = static_cast<std::uint32_t>(basis.dim());
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("vectorize_tangent: matrix dimension does not match basis");
  }
  CVector c(basis.size());
  const double inv_n = 1.0 / static_cast<double>(dim);
  for (int j = 0; j < basis.size(); ++j) {
    const PauliWord& w = basis.word(j);
    Complex trace(0.0, 0.0);
    for (std::uint32_t r = 0; r < dim; ++r) {
      // Tr(G M) picks one entry of M per row of G.
      trace += w.entry_phase(r) * m(r ^ w.x_mask(), r);
    }
    c[j] = trace * inv_n;
  }
  return c;
}

LieVector restrict_to(const LieVector& theta, const RestrictionSet& restriction) {
  std::vector<std::pair<int, double>> kept;
  theta.for_each([&](int i, double x) {
    if (restriction.contains(i)) kept.emplace_back(i, x);
  });
  return LieVector::from_entries(theta.dim(), std::move(kept));
}

}  // namespace geope
