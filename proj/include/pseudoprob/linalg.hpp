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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pseudoprob/errors.hpp"

namespace pseudoprob {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Tolerance for Hermiticity and idempotence checks.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues closer than this are merged into one degenerate projector.
inline constexpr double kDegeneracyTol = 1e-8;

/// Sorted eigenvalues with one eigenprojector per distinct eigenvalue.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> projectors;
  std::vector<int> multiplicities;
};

template <typename Derived>
ComplexMatrix adjoint(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Tensor product; the first factor is the first (most significant)
/// subsystem.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<
      typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = kHermitianTol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_projector(const Eigen::MatrixBase<Derived>& m,
                  double tol = kHermitianTol) {
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Transpose over the second-subsystem indices of a (dim_a*dim_b)-square
/// matrix.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, int dim_a,
                       int dim_b) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() ||
      m.rows() != Eigen::Index(dim_a) * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_transpose: matrix is not (dim_a*dim_b)-square");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
      out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i) {
    for (int k = 0; k < dim_b; ++k) {
      for (int j = 0; j < dim_a; ++j) {
        for (int l = 0; l < dim_b; ++l) {
          out(i * dim_b + k, j * dim_b + l) = m(i * dim_b + l, j * dim_b + k);
        }
      }
    }
  }
  return out;
}

ComplexMatrix identity(int dim);

/// Checked constructor: rejects non-square or non-finite input.
ComplexMatrix make_matrix(const ComplexMatrix& entries);

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when the
/// input deviates from its adjoint by more than kHermitianTol.
Spectrum hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

/// Real part of Tr(a b) without forming the product.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrices; index 0 is the identity, 1..3 are x, y, z.
const ComplexMatrix& pauli(int index);

}  // namespace pseudoprob
