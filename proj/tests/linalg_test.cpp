// Copyright 2026 The QSV Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsv/linalg.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reference_tables.hpp"
#include "qsv/states.hpp"

namespace qsv {
namespace {

TEST(Kron, IdentityTimesIdentity) {
  const Matrix m = kron(Matrix::identity(2), Matrix::identity(2));
  EXPECT_NEAR(m.max_abs_diff(Matrix::identity(4)), 0.0, 1e-15);
}

TEST(Kron, PauliXTensorZ) {
  const Matrix m = kron(pauli_x(), pauli_z());
  EXPECT_NEAR(std::abs(m(0, 2) - cdouble(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 3) - cdouble(-1.0)), 0.0, 1e-15);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m(i, i), cdouble(0.0));
}

TEST(Kron, BasisProjectors) {
  Matrix p0(2), p1(2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Matrix m = kron(p0, p1);
  Matrix expected(4);
  expected(1, 1) = 1.0;
  EXPECT_NEAR(m.max_abs_diff(expected), 0.0, 1e-15);
}

TEST(Eigenvalues, PauliZ) {
  const Spectrum sp = hermitian_eigenvalues(pauli_z());
  ASSERT_EQ(sp.eigenvalues.size(), 2u);
  EXPECT_NEAR(sp.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(sp.eigenvalues[1], -1.0, 1e-12);
}

TEST(Eigenvalues, Identity4) {
  const Spectrum sp = hermitian_eigenvalues(Matrix::identity(4));
  for (double ev : sp.eigenvalues) EXPECT_NEAR(ev, 1.0, 1e-12);
  EXPECT_NEAR(sp.gap, 0.0, 1e-12);
}

TEST(Eigenvalues, ReferenceW3InhomogeneousOperator) {
  const Spectrum sp = hermitian_eigenvalues(testing::w3_inhomogeneous_operator());
  EXPECT_NEAR(sp.eigenvalues[0], 1.0, 1e-9);
  EXPECT_NEAR(sp.eigenvalues[1], 10.0 / 13.0, 1e-9);
}

TEST(Eigenvalues, RejectsNonHermitian) {
  Matrix m(2);
  m(0, 1) = cdouble(1.0, 0.0);
  m(1, 0) = cdouble(0.5, 0.0);
  EXPECT_THROW(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST(Eigenvalues, MatchesCharacteristicPolynomialRoots) {
  Rng rng(12345);
  for (std::size_t dim : {2u, 4u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Matrix h = testing::random_hermitian(dim, rng);
      const Spectrum sp = hermitian_eigenvalues(h);
      const std::vector<double> oracle = testing::char_poly_eigenvalues(h);
      ASSERT_EQ(sp.eigenvalues.size(), oracle.size());
      for (std::size_t i = 0; i < oracle.size(); ++i)
        EXPECT_NEAR(sp.eigenvalues[i], oracle[i], 1e-9);
    }
  }
}

TEST(Eigenvalues, SumEqualsTrace) {
  Rng rng(777);
  for (std::size_t dim : {2u, 4u, 8u, 16u}) {
    const Matrix h = testing::random_hermitian(dim, rng);
    const Spectrum sp = hermitian_eigenvalues(h);
    double sum = 0.0;
    for (double ev : sp.eigenvalues) sum += ev;
    EXPECT_NEAR(sum, h.trace().real(), 1e-9);
  }
}

TEST(Eigenvalues, VectorsSatisfyEigenEquation) {
  Rng rng(4242);
  const Matrix h = testing::random_hermitian(8, rng);
  const EigenSystem sys = hermitian_eigensystem(h);
  for (std::size_t c = 0; c < 8; ++c) {
    for (std::size_t r = 0; r < 8; ++r) {
      cdouble hv = 0.0;
      for (std::size_t k = 0; k < 8; ++k) hv += h(r, k) * sys.vectors(k, c);
      EXPECT_NEAR(std::abs(hv - sys.eigenvalues[c] * sys.vectors(r, c)), 0.0, 1e-9);
    }
  }
}

TEST(SpectralGap, BellProtocol) {
  // (P_XX+ + P_YY- + P_ZZ+) / 3
  Matrix omega = eigenspace_projector(kron(pauli_x(), pauli_x()), +1);
  omega += eigenspace_projector(kron(pauli_y(), pauli_y()), -1);
  omega += eigenspace_projector(kron(pauli_z(), pauli_z()), +1);
  omega *= 1.0 / 3.0;
  EXPECT_NEAR(spectral_gap(omega), 2.0 / 3.0, 1e-12);
}

TEST(SpectralGap, IdentityHasZeroGap) {
  EXPECT_NEAR(spectral_gap(Matrix::identity(4)), 0.0, 1e-12);
}

TEST(SpectralGap, ReferenceW3Inhomogeneous) {
  EXPECT_NEAR(spectral_gap(testing::w3_inhomogeneous_operator()), 3.0 / 13.0, 1e-9);
}

TEST(SpectralGap, RejectsInvalidProtocol) {
  EXPECT_THROW(spectral_gap(pauli_z() * cdouble(0.5)), std::invalid_argument);
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  const Matrix reduced = partial_trace(bell().projector(), {0});
  EXPECT_NEAR(reduced.max_abs_diff(Matrix::identity(2) * cdouble(0.5)), 0.0, 1e-12);
}

TEST(PartialTrace, ProductState) {
  StateVector zz(2, {1.0, 0.0, 0.0, 0.0});
  Matrix expected(2);
  expected(0, 0) = 1.0;
  EXPECT_NEAR(partial_trace(zz.projector(), {1}).max_abs_diff(expected), 0.0, 1e-12);
}

TEST(PartialTrace, W3SingleQubitReduction) {
  const Matrix reduced = partial_trace(w_state(3).projector(), {0});
  Matrix expected(2);
  expected(0, 0) = 2.0 / 3.0;
  expected(1, 1) = 1.0 / 3.0;
  EXPECT_NEAR(reduced.max_abs_diff(expected), 0.0, 1e-12);
}

TEST(PartialTrace, RejectsBadSubsets) {
  const Matrix rho = bell().projector();
  EXPECT_THROW(partial_trace(rho, {}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {2}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {-1}), std::invalid_argument);
}

TEST(PartialTrace, ComplementaryFactorsOfProducts) {
  Rng rng(99);
  // rho = rho_a x rho_b with unit trace; tracing either side returns the
  // other factor.
  const StateVector a = random_state(1, rng);
  const StateVector b = random_state(2, rng);
  const Matrix rho = kron(a.projector(), b.projector());
  EXPECT_NEAR(partial_trace(rho, {0}).max_abs_diff(a.projector()), 0.0, 1e-9);
  EXPECT_NEAR(partial_trace(rho, {1, 2}).max_abs_diff(b.projector()), 0.0, 1e-9);
  EXPECT_NEAR(partial_trace(rho, {0, 1, 2}).max_abs_diff(rho), 0.0, 1e-9);
}

TEST(PartialTrace, PreservesTrace) {
  Rng rng(1001);
  const StateVector psi = random_state(3, rng);
  const Matrix reduced = partial_trace(psi.projector(), {1});
  EXPECT_NEAR(reduced.trace().real(), 1.0, 1e-9);
}

TEST(EigenspaceProjector, PauliZPlus) {
  Matrix expected(2);
  expected(0, 0) = 1.0;
  EXPECT_NEAR(eigenspace_projector(pauli_z(), +1).max_abs_diff(expected), 0.0, 1e-12);
}

TEST(EigenspaceProjector, ParityProjectorIsIdempotentRankTwo) {
  const Matrix p = eigenspace_projector(kron(pauli_x(), pauli_x()), +1);
  EXPECT_NEAR((p * p).max_abs_diff(p), 0.0, 1e-9);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-9);
}

TEST(EigenspaceProjector, PlusAndMinusSumToIdentity) {
  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    // random +-1 observable: sign pattern in a random eigenbasis
    const Matrix h = testing::random_hermitian(4, rng);
    const EigenSystem sys = hermitian_eigensystem(h);
    Matrix obs(4);
    for (std::size_t c = 0; c < 4; ++c) {
      const double lambda = c % 2 == 0 ? 1.0 : -1.0;
      for (std::size_t r1 = 0; r1 < 4; ++r1)
        for (std::size_t r2 = 0; r2 < 4; ++r2)
          obs(r1, r2) += lambda * sys.vectors(r1, c) * std::conj(sys.vectors(r2, c));
    }
    const Matrix sum =
        eigenspace_projector(obs, +1) + eigenspace_projector(obs, -1);
    EXPECT_NEAR(sum.max_abs_diff(Matrix::identity(4)), 0.0, 1e-9);
  }
}

TEST(EigenspaceProjector, BellOperatorAssembly) {
  // (P_XX+ + P_YY- + P_ZZ+)/3 == 1/3 + (2/3)|Phi+><Phi+|
  Matrix omega = eigenspace_projector(kron(pauli_x(), pauli_x()), +1);
  omega += eigenspace_projector(kron(pauli_y(), pauli_y()), -1);
  omega += eigenspace_projector(kron(pauli_z(), pauli_z()), +1);
  omega *= 1.0 / 3.0;
  Matrix expected = Matrix::identity(4) * cdouble(1.0 / 3.0);
  expected += bell().projector() * cdouble(2.0 / 3.0);
  EXPECT_NEAR(omega.max_abs_diff(expected), 0.0, 1e-12);
}

TEST(EigenspaceProjector, RejectsGeneralObservables) {
  EXPECT_THROW(eigenspace_projector(pauli_z() * cdouble(2.0), +1),
               std::invalid_argument);
  EXPECT_THROW(eigenspace_projector(pauli_z(), 2), std::invalid_argument);
}

TEST(QubitCount, ValidatesDimensions) {
  EXPECT_EQ(qubit_count_for_dim(2), 1);
  EXPECT_EQ(qubit_count_for_dim(256), 8);
  EXPECT_THROW(qubit_count_for_dim(3), std::invalid_argument);
  EXPECT_THROW(qubit_count_for_dim(1), std::invalid_argument);
  EXPECT_THROW(qubit_count_for_dim(512), std::invalid_argument);
}

}  // namespace
}  // namespace qsv
