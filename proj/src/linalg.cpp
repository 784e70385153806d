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

#include "pseudoprob/linalg.hpp"

#include <array>
#include <string>

namespace pseudoprob {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::TooManyObservables: return "TooManyObservables";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::SubsystemMismatch: return "SubsystemMismatch";
    case ErrorCode::BadFrames: return "BadFrames";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::Unphysical: return "Unphysical";
    case ErrorCode::ResolutionTooFine: return "ResolutionTooFine";
    case ErrorCode::NotDichotomic: return "NotDichotomic";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

ComplexMatrix identity(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::DimensionMismatch, "identity: dim must be >= 1");
  }
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix make_matrix(const ComplexMatrix& entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix must be square with dim >= 1");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  }
  return entries;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "expected a square matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  }
  const double dev = max_abs(m - m.adjoint());
  if (dev > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(dev));
  }
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const ComplexMatrix& vectors = solver.eigenvectors();

  Spectrum out;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    // chain consecutive near-equal eigenvalues into one group
    while (end < values.size() &&
           values(end) - values(end - 1) < kDegeneracyTol) {
      ++end;
    }
    const Eigen::Index count = end - start;
    const auto block = vectors.middleCols(start, count);
    out.eigenvalues.push_back(values.segment(start, count).mean());
    out.projectors.push_back(block * block.adjoint());
    out.multiplicities.push_back(static_cast<int>(count));
    start = end;
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly)
      .eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m)(0);
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_product: shape mismatch");
  }
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum().real();
}

const ComplexMatrix& pauli(int index) {
  static const std::array<ComplexMatrix, 4> table = [] {
    const Complex i{0.0, 1.0};
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m = ComplexMatrix::Zero(2, 2);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  if (index < 0 || index > 3) {
    throw Error(ErrorCode::DimensionMismatch, "pauli index out of range");
  }
  return table[static_cast<std::size_t>(index)];
}

}  // namespace pseudoprob
