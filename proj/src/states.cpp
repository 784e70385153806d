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

#include "pseudoprob/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "pseudoprob/random.hpp"

namespace pseudoprob {

DensityMatrix DensityMatrix::make(const ComplexMatrix& matrix,
                                  std::vector<int> dims) {
  const ComplexMatrix m = make_matrix(matrix);
  const int total = std::accumulate(dims.begin(), dims.end(), 1,
                                    std::multiplies<int>());
  if (dims.empty() || total != m.rows() ||
      std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; })) {
    throw Error(ErrorCode::DimensionMismatch,
                "subsystem dims do not multiply to " +
                    std::to_string(m.rows()));
  }
  if (!is_hermitian(m)) throw Error(ErrorCode::NotHermitian, "density matrix");
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kHermitianTol) {
    throw Error(ErrorCode::Unphysical, "trace " + std::to_string(trace));
  }
  const double lowest = min_eigenvalue(m);
  if (lowest < -kPsdTol) {
    throw Error(ErrorCode::Unphysical,
                "negative eigenvalue " + std::to_string(lowest));
  }
  return DensityMatrix(0.5 * (m + m.adjoint()), std::move(dims));
}

double DensityMatrix::expectation(const ComplexMatrix& op) const {
  return trace_product(matrix_, op);
}

ComplexMatrix TwoQubitPauliForm::reconstruct() const {
  ComplexMatrix out = kron(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    out += P(i) * kron(pauli(i + 1), pauli(0));
    out += Q(i) * kron(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      out += T(i, j) * kron(pauli(i + 1), pauli(j + 1));
    }
  }
  return 0.25 * out;
}

ComplexMatrix sigma_dot_sigma() {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (int i = 1; i <= 3; ++i) out += kron(pauli(i), pauli(i));
  return out;
}

ComplexMatrix singlet_projector() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

std::vector<double> werner_local_eigenvalues(double alpha, double beta) {
  const double r = std::sqrt(4.0 * alpha * alpha + beta * beta);
  return {0.25 * (1 + alpha + beta), 0.25 * (1 + alpha - beta),
          0.25 * (1 - alpha + r), 0.25 * (1 - alpha - r)};
}

DensityMatrix werner_local(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::NonFinite, "werner_local parameters");
  }
  for (double ev : werner_local_eigenvalues(alpha, beta)) {
    if (ev < -kPsdTol) {
      throw Error(ErrorCode::Unphysical,
                  "werner_local(alpha=" + std::to_string(alpha) +
                      ", beta=" + std::to_string(beta) +
                      ") has eigenvalue " + std::to_string(ev));
    }
  }
  const ComplexMatrix m =
      0.25 * (kron(pauli(0), pauli(0)) + alpha * sigma_dot_sigma() +
              beta * kron(pauli(3), pauli(0)));
  return DensityMatrix::two_qubit(m);
}

std::array<double, 4> tetrahedron_slacks(const CorrelationPoint& t) {
  return {1 - t.t1 - t.t2 - t.t3, 1 - t.t1 + t.t2 + t.t3,
          1 + t.t1 - t.t2 + t.t3, 1 + t.t1 + t.t2 - t.t3};
}

DensityMatrix bell_diagonal(const CorrelationPoint& t) {
  const auto slacks = tetrahedron_slacks(t);
  for (std::size_t i = 0; i < slacks.size(); ++i) {
    if (!(slacks[i] >= -1e-12)) {
      throw Error(ErrorCode::Unphysical,
                  "tetrahedron inequality " + std::to_string(i + 1) +
                      " violated (slack " + std::to_string(slacks[i]) + ")");
    }
  }
  TwoQubitPauliForm form;
  form.T = t.vector().asDiagonal();
  return DensityMatrix::two_qubit(form.reconstruct());
}

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (!rho.is_two_qubit()) {
    throw Error(ErrorCode::DimensionMismatch, "expected a two-qubit state");
  }
}

}  // namespace

TwoQubitPauliForm pauli_form(const DensityMatrix& rho) {
  require_two_qubit(rho);
  TwoQubitPauliForm f;
  for (int i = 0; i < 3; ++i) {
    f.P(i) = rho.expectation(kron(pauli(i + 1), pauli(0)));
    f.Q(i) = rho.expectation(kron(pauli(0), pauli(i + 1)));
    for (int j = 0; j < 3; ++j) {
      f.T(i, j) = rho.expectation(kron(pauli(i + 1), pauli(j + 1)));
    }
  }
  return f;
}

SvdNormalForm svd_normal_form(const DensityMatrix& rho) {
  const TwoQubitPauliForm f = pauli_form(rho);
  Eigen::JacobiSVD<Matrix3> svd(f.T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdNormalForm out;
  out.singular_values = svd.singularValues();
  out.rotation_first = svd.matrixU();
  out.rotation_second = svd.matrixV();

  Matrix3 u = out.rotation_first;
  Matrix3 v = out.rotation_second;
  Vector3 s = out.singular_values;
  if (u.determinant() < 0) {
    u.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  if (v.determinant() < 0) {
    v.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  out.signed_values = s;
  out.proper_first = u;
  out.proper_second = v;

  out.rotated.P = out.rotation_first.transpose() * f.P;
  out.rotated.Q = out.rotation_second.transpose() * f.Q;
  out.rotated.T =
      out.rotation_first.transpose() * f.T * out.rotation_second;
  return out;
}

bool ppt_is_entangled(const DensityMatrix& rho) {
  require_two_qubit(rho);
  return min_eigenvalue(partial_transpose(rho.matrix(), 2, 2)) < -kPsdTol;
}

double chsh_max(const DensityMatrix& rho) {
  const Matrix3 t = pauli_form(rho).T;
  Eigen::SelfAdjointEigenSolver<Matrix3> eig(t.transpose() * t,
                                             Eigen::EigenvaluesOnly);
  const Vector3 u = eig.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, u(1) + u(2)));
}

DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed) {
  const int dim = std::accumulate(dims.begin(), dims.end(), 1,
                                  std::multiplies<int>());
  if (dim < 2) {
    throw Error(ErrorCode::DimensionMismatch, "random_density needs dim >= 2");
  }
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::make(rho, std::move(dims));
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  return random_density(std::vector<int>{dim}, seed);
}

DensityMatrix random_separable(int terms, std::uint64_t seed) {
  if (terms < 1) {
    throw Error(ErrorCode::DimensionMismatch, "need at least one term");
  }
  Rng rng = make_rng(seed, 1);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const Vector3 a = random_unit_vector(rng);
    const Vector3 b = random_unit_vector(rng);
    const double w = uniform(rng) + 1e-3;
    ComplexMatrix ra = 0.5 * pauli(0);
    ComplexMatrix rb = 0.5 * pauli(0);
    for (int i = 0; i < 3; ++i) {
      ra += 0.5 * a(i) * pauli(i + 1);
      rb += 0.5 * b(i) * pauli(i + 1);
    }
    rho += w * kron(ra, rb);
    total += w;
  }
  return DensityMatrix::two_qubit(rho / total);
}

}  // namespace pseudoprob
