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

#include <array>
#include <cstdint>
#include <vector>

#include "pseudoprob/linalg.hpp"

namespace pseudoprob {

inline constexpr double kPsdTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite operator over a product of
/// subsystems.
class DensityMatrix {
 public:
  /// Throws NotHermitian, DimensionMismatch or Unphysical.
  static DensityMatrix make(const ComplexMatrix& matrix, std::vector<int> dims);
  /// Two-qubit shorthand.
  static DensityMatrix two_qubit(const ComplexMatrix& matrix) {
    return make(matrix, {2, 2});
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  bool is_two_qubit() const { return dims_ == std::vector<int>{2, 2}; }

  /// Re Tr(rho * op).
  double expectation(const ComplexMatrix& op) const;

 private:
  DensityMatrix(ComplexMatrix m, std::vector<int> dims)
      : matrix_(std::move(m)), dims_(std::move(dims)) {}
  ComplexMatrix matrix_;
  std::vector<int> dims_;
};

/// rho = (1 + P.sigma + Q.Sigma + sum_ij T_ij sigma_i Sigma_j) / 4.
struct TwoQubitPauliForm {
  Vector3 P = Vector3::Zero();
  Vector3 Q = Vector3::Zero();
  Matrix3 T = Matrix3::Zero();

  ComplexMatrix reconstruct() const;
};

/// Diagonal of a correlation tensor.
struct CorrelationPoint {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  Vector3 vector() const { return {t1, t2, t3}; }
  double operator[](int i) const { return i == 0 ? t1 : (i == 1 ? t2 : t3); }
};

/// sigma . Sigma, the isotropic correlation operator.
ComplexMatrix sigma_dot_sigma();

ComplexMatrix singlet_projector();

/// (1 + alpha sigma.Sigma + beta sigma_z) / 4 with sigma_z on the first
/// qubit. Unphysical when an eigenvalue drops below -1e-10.
DensityMatrix werner_local(double alpha, double beta);

/// The four closed-form eigenvalues of werner_local.
std::vector<double> werner_local_eigenvalues(double alpha, double beta);

/// (1 + sum_i t_i sigma_i Sigma_i) / 4. Unphysical when t leaves the
/// tetrahedron; the message names the violated inequality.
DensityMatrix bell_diagonal(const CorrelationPoint& t);

/// The four tetrahedron slacks 1 - t1 - t2 - t3, 1 - t1 + t2 + t3,
/// 1 + t1 - t2 + t3, 1 + t1 + t2 - t3 (also the Bell-basis weights times 4).
std::array<double, 4> tetrahedron_slacks(const CorrelationPoint& t);

TwoQubitPauliForm pauli_form(const DensityMatrix& rho);

/// T = R1 diag(s) R2^T with orthogonal R1, R2 and s descending >= 0.
/// `signed_values` is the same decomposition restricted to proper rotations,
/// which pushes the determinant sign of T onto the smallest value.
struct SvdNormalForm {
  TwoQubitPauliForm rotated;
  Vector3 singular_values;
  Vector3 signed_values;
  Matrix3 rotation_first;
  Matrix3 rotation_second;
  Matrix3 proper_first;
  Matrix3 proper_second;
};

SvdNormalForm svd_normal_form(const DensityMatrix& rho);

/// True iff the partial transpose has an eigenvalue below -1e-10.
bool ppt_is_entangled(const DensityMatrix& rho);

/// 2 sqrt(u1 + u2) with u1, u2 the two largest eigenvalues of T^T T.
double chsh_max(const DensityMatrix& rho);

/// Normalized G G^dagger for a complex Ginibre matrix G.
DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed);
DensityMatrix random_density(int dim, std::uint64_t seed);

/// Convex mixture of `terms` random pure product states of two qubits.
DensityMatrix random_separable(int terms, std::uint64_t seed);

}  // namespace pseudoprob
