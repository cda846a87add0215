#include <doctest.h>

#include "geope/pauli.hpp"
#include "geope/rng.hpp"
#include "support/oracles.hpp"

using namespace geope;
namespace oracle = geope::testing;

TEST_SUITE_BEGIN("pauli");

TEST_CASE("single-qubit word matrices match their definitions") {
  CHECK(word_matrix(PauliWord::parse("X")).isApprox(
      (CMatrix(2, 2) << 0, 1, 1, 0).finished(), 1e-15));
  CHECK(word_matrix(PauliWord::parse("ZI")).isApprox(
      (CVector(4) << 1, 1, -1, -1).finished().asDiagonal().toDenseMatrix(), 1e-15));
}

TEST_CASE("word matrices agree with the Kronecker-product oracle") {
  Rng rng(7);
  PauliBasis basis(3);
  for (int trial = 0; trial < 25; ++trial) {
    const PauliWord& w = basis.word(static_cast<int>(rng.below(basis.size())));
    const CMatrix m = word_matrix(w);
    CHECK((m - oracle::kron_word_matrix(w)).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs((m * m).trace().real() - 8.0) < 1e-12);
    CHECK(std::abs(m.trace()) < 1e-12);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-15);  // Hermitian
    CHECK((m * m.adjoint() - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);  // unitary
  }
}

TEST_CASE("basis is lexicographic with identity excluded") {
  PauliBasis one(1);
  REQUIRE(one.size() == 3);
  CHECK(one.word(0).str() == "X");
  CHECK(one.word(1).str() == "Y");
  CHECK(one.word(2).str() == "Z");

  PauliBasis two(2);
  REQUIRE(two.size() == 15);
  CHECK(two.word(0).str() == "IX");
  CHECK(two.word(1).str() == "IY");
  CHECK(two.word(2).str() == "IZ");
  CHECK(two.word(3).str() == "XI");
  CHECK(two.word(4).str() == "XX");
  CHECK(two.word(14).str() == "ZZ");
  for (int i = 0; i < two.size(); ++i) {
    CHECK(two.index_of(two.word(i)) == i);
    CHECK_FALSE(two.word(i).is_identity());
  }
  CHECK_THROWS_AS(two.index_of(PauliWord::parse("II")), std::invalid_argument);
}

TEST_CASE("word string round trip") {
  for (const char* text : {"XYZ", "IIZ", "YXIZ"}) {
    CHECK(PauliWord::parse(text).str() == text);
  }
  CHECK_THROWS_AS(PauliWord::parse("XQ"), std::invalid_argument);
}

TEST_CASE("orthogonality Tr(Gi Gj) = N delta_ij") {
  PauliBasis two(2);
  for (int i = 0; i < two.size(); ++i) {
    const CMatrix gi = word_matrix(two.word(i));
    for (int j = 0; j < two.size(); ++j) {
      const Complex t = (gi * word_matrix(two.word(j))).trace();
      const double expected = i == j ? 4.0 : 0.0;
      CHECK(std::abs(t - expected) < 1e-12);
    }
  }
  // Sampled pairs for three qubits.
  Rng rng(11);
  PauliBasis three(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int i = static_cast<int>(rng.below(three.size()));
    const int j = static_cast<int>(rng.below(three.size()));
    const Complex t =
        (word_matrix(three.word(i)) * word_matrix(three.word(j))).trace();
    CHECK(std::abs(t - (i == j ? 8.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("assemble_hamiltonian basics") {
  PauliBasis basis(2);
  CHECK(assemble_hamiltonian(LieVector::zeros(15), basis).cwiseAbs().maxCoeff() == 0.0);

  const int zz = basis.index_of(PauliWord::parse("ZZ"));
  const CMatrix h = assemble_hamiltonian(LieVector::from_entries(15, {{zz, 1.0}}), basis);
  CHECK(h.isApprox((CVector(4) << 1, -1, -1, 1).finished().asDiagonal().toDenseMatrix(), 1e-15));
}

TEST_CASE("assemble_hamiltonian matches naive summation") {
  Rng rng(3);
  PauliBasis basis(2);
  RVector theta(15);
  for (int i = 0; i < 15; ++i) theta[i] = rng.uniform(-2.0, 2.0);
  const LieVector v = LieVector::from_dense(theta);
  CMatrix expected = CMatrix::Zero(4, 4);
  for (int i = 0; i < 15; ++i) expected += theta[i] * oracle::kron_word_matrix(basis.word(i));
  CHECK((assemble_hamiltonian(v, basis) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assemble_hamiltonian rejects mismatched dimensions") {
  PauliBasis basis(2);
  CHECK_THROWS_AS(assemble_hamiltonian(LieVector::zeros(3), basis), std::invalid_argument);
}

TEST_CASE("vectorize_tangent round trip and identity drop") {
  Rng rng(5);
  for (int n = 1; n <= 3; ++n) {
    PauliBasis basis(n);
    RVector theta(basis.size());
    for (int i = 0; i < theta.size(); ++i) theta[i] = rng.uniform(-1.0, 1.0);
    const CVector back = vectorize_tangent(
        assemble_hamiltonian(LieVector::from_dense(theta), basis), basis);
    CHECK((back.real() - theta).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(back.imag().cwiseAbs().maxCoeff() < 1e-12);
  }
  PauliBasis basis(2);
  CHECK(vectorize_tangent(CMatrix::Identity(4, 4), basis).norm() == 0.0);
}

TEST_CASE("vectorize_tangent matches the direct trace oracle") {
  Rng rng(9);
  PauliBasis basis(2);
  const CMatrix g = oracle::random_gaussian_matrix(4, rng);
  const CMatrix anti = 0.5 * (g - g.adjoint());
  const CVector c = vectorize_tangent(anti, basis);
  for (int j = 0; j < basis.size(); ++j) {
    const Complex direct = (oracle::kron_word_matrix(basis.word(j)) * anti).trace();
    CHECK(std::abs(4.0 * c[j] - direct) < 1e-13);  // N*c_j is the unnormalised trace
  }
}

TEST_CASE("restrict_to masks, is idempotent and linear") {
  Rng rng(13);
  PauliBasis basis(2);
  RVector theta(15);
  for (int i = 0; i < 15; ++i) theta[i] = rng.uniform(-1.0, 1.0);
  const LieVector v = LieVector::from_dense(theta);

  std::vector<int> all(15);
  for (int i = 0; i < 15; ++i) all[i] = i;
  const RestrictionSet full(basis, all);
  CHECK((restrict_to(v, full).to_dense() - theta).cwiseAbs().maxCoeff() == 0.0);

  const RestrictionSet some(basis, {1, 4, 7, 12});
  const LieVector masked = restrict_to(v, some);
  for (int i = 0; i < 15; ++i) {
    const double expected = some.contains(i) ? theta[i] : 0.0;
    CHECK(masked.at(i) == expected);
  }
  // Support in the complement goes to zero.
  const RestrictionSet complement(basis, {0, 2, 3});
  const LieVector sparse = LieVector::from_entries(15, {{1, 2.0}, {4, -1.0}});
  CHECK(restrict_to(sparse, complement).to_dense().norm() == 0.0);

  // Idempotent and linear.
  CHECK((restrict_to(masked, some).to_dense() - masked.to_dense()).norm() == 0.0);
  RVector theta2(15);
  for (int i = 0; i < 15; ++i) theta2[i] = rng.uniform(-1.0, 1.0);
  const RVector lhs =
      restrict_to(LieVector::from_dense(theta + 2.0 * theta2), some).to_dense();
  const RVector rhs = restrict_to(v, some).to_dense() +
                      2.0 * restrict_to(LieVector::from_dense(theta2), some).to_dense();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("LieVector picks sparse storage for small support") {
  CHECK(LieVector::from_entries(100, {{3, 1.0}}).is_sparse());
  RVector dense = RVector::Ones(20);
  CHECK_FALSE(LieVector::from_dense(dense).is_sparse());
  CHECK_THROWS_AS(LieVector::from_entries(4, {{7, 1.0}}), std::invalid_argument);
  RVector bad = RVector::Zero(3);
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(LieVector::from_dense(bad), std::invalid_argument);
}

TEST_SUITE_END();
