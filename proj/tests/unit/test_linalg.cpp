// Copyright 2026 The pseudoprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pseudoprob/linalg.hpp"

using namespace pseudoprob;
using Catch::Matchers::WithinAbs;

TEST_CASE("adjoint fixes Hermitian matrices and transposes real ones") {
  CHECK(adjoint(identity(2)).isApprox(identity(2)));
  CHECK(adjoint(pauli(2)).isApprox(pauli(2)));
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  ComplexMatrix expected(2, 2);
  expected << 0, 0, 1, 0;
  CHECK(adjoint(m).isApprox(expected));
}

TEST_CASE("kron orders the first factor most significant") {
  CHECK(kron(identity(2), identity(2)).isApprox(identity(4)));
  const ComplexMatrix zi = kron(pauli(3), pauli(0));
  Eigen::Vector4cd diag(1, 1, -1, -1);
  CHECK(zi.isApprox(ComplexMatrix(diag.asDiagonal())));

  const ComplexMatrix xx = kron(pauli(1), pauli(1));
  // |00> <-> |11>, |01> <-> |10>
  CHECK(xx(3, 0) == Complex(1, 0));
  CHECK(xx(0, 3) == Complex(1, 0));
  CHECK(xx(2, 1) == Complex(1, 0));
  CHECK(xx(1, 2) == Complex(1, 0));
  CHECK(oracle::max_abs_diff(kron(pauli(2), pauli(3)),
                             oracle::kron(oracle::pauli(2), oracle::pauli(3))) == 0.0);
}

TEST_CASE("hermitian_eig groups degenerate eigenvalues") {
  const Spectrum x = hermitian_eig(pauli(1));
  REQUIRE(x.eigenvalues.size() == 2);
  CHECK_THAT(x.eigenvalues[0], WithinAbs(-1.0, 1e-12));
  CHECK_THAT(x.eigenvalues[1], WithinAbs(1.0, 1e-12));

  const ComplexMatrix m = 0.25 * (identity(2) + pauli(1) + pauli(3));
  const Spectrum s = hermitian_eig(m);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK_THAT(s.eigenvalues[0], WithinAbs((1 - std::sqrt(2.0)) / 4, 1e-12));
  CHECK_THAT(s.eigenvalues[1], WithinAbs((1 + std::sqrt(2.0)) / 4, 1e-12));

  const Spectrum id = hermitian_eig(identity(4));
  REQUIRE(id.eigenvalues.size() == 1);
  CHECK(id.multiplicities[0] == 4);
  CHECK(id.projectors[0].isApprox(identity(4)));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  try {
    hermitian_eig(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("partial transpose") {
  CHECK(partial_transpose(identity(4), 2, 2).isApprox(identity(4)));
  const ComplexMatrix singlet = oracle::singlet();
  CHECK_THAT(min_eigenvalue(partial_transpose(singlet, 2, 2)),
             WithinAbs(-0.5, 1e-12));

  ComplexMatrix ra(2, 2);
  ra << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  ComplexMatrix rb(2, 2);
  rb << 0.4, Complex(0.0, 0.3), Complex(0.0, -0.3), 0.6;
  const ComplexMatrix pt = partial_transpose(kron(ra, rb), 2, 2);
  CHECK(pt.isApprox(kron(ra, ComplexMatrix(rb.transpose()))));
  CHECK(min_eigenvalue(pt) >= -1e-12);

  CHECK_THROWS_AS(partial_transpose(identity(4), 3, 2), Error);
}

TEST_CASE("make_matrix rejects non-finite and non-square input") {
  ComplexMatrix bad(2, 2);
  bad << 1, 0, 0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(make_matrix(bad), Error);
  CHECK_THROWS_AS(make_matrix(ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("trace_product matches the explicit trace") {
  const ComplexMatrix a = kron(pauli(1), pauli(2)) + kron(pauli(3), pauli(0));
  const ComplexMatrix b = oracle::bell_diagonal(-0.3, 0.2, 0.1);
  CHECK_THAT(trace_product(a, b), WithinAbs((a * b).trace().real(), 1e-14));
}

TEST_CASE("Pauli matrices") {
  for (int i = 0; i < 4; ++i) {
    CHECK(oracle::max_abs_diff(pauli(i), oracle::pauli(i)) == 0.0);
  }
  CHECK_THROWS_AS(pauli(4), Error);
}
