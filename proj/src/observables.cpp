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

#include "pseudoprob/observables.hpp"

#include <cmath>
#include <string>

#include "pseudoprob/random.hpp"

namespace pseudoprob {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kOrthoAcceptTol = 1e-10;
constexpr double kOrthoRepairTol = 1e-6;

}  // namespace

BlochVector BlochVector::make(const Vector3& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::NotUnit,
                "Bloch vector norm " + std::to_string(v.norm()));
  }
  return BlochVector(v);
}

BlochVector BlochVector::normalized(const Vector3& v) {
  if (!v.allFinite() || v.norm() < 1e-12) {
    throw Error(ErrorCode::NotUnit, "cannot normalize a zero vector");
  }
  return BlochVector(v.normalized());
}

DichotomicObservable::DichotomicObservable(const ComplexMatrix& matrix,
                                           std::string label)
    : matrix_(make_matrix(matrix)), label_(std::move(label)) {
  if (!is_hermitian(matrix_)) {
    throw Error(ErrorCode::NotHermitian, "observable '" + label_ + "'");
  }
  const auto dim = matrix_.rows();
  if (max_abs(matrix_ * matrix_ - ComplexMatrix::Identity(dim, dim)) >
      kHermitianTol) {
    throw Error(ErrorCode::NotDichotomic,
                "observable '" + label_ + "' does not square to identity");
  }
}

DichotomicObservable DichotomicObservable::relabeled(std::string label) const {
  DichotomicObservable out = *this;
  out.label_ = std::move(label);
  return out;
}

DichotomicObservable DichotomicObservable::operator-() const {
  DichotomicObservable out = *this;
  out.matrix_ = -matrix_;
  if (direction_) out.direction_ = -*direction_;
  return out;
}

DichotomicObservable pauli_observable(const BlochVector& v,
                                      std::string label) {
  const Vector3& n = v.vector();
  ComplexMatrix m = n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3);
  DichotomicObservable out(m, std::move(label));
  out.direction_ = v;
  return out;
}

ComplexMatrix projector(const DichotomicObservable& obs, Outcome outcome) {
  const int dim = obs.dim();
  return 0.5 * (ComplexMatrix::Identity(dim, dim) +
                double(sign(outcome)) * obs.matrix());
}

DichotomicObservable random_dichotomic(int dim, int rank_plus,
                                       std::uint64_t seed, std::string label) {
  if (dim < 2 || rank_plus < 1 || rank_plus >= dim) {
    throw Error(ErrorCode::BadRank, "need 1 <= rank_plus < dim, got rank " +
                                        std::to_string(rank_plus) + " in dim " +
                                        std::to_string(dim));
  }
  Rng rng = make_rng(seed);
  const ComplexMatrix u = random_unitary(dim, rng);
  const auto cols = u.leftCols(rank_plus);
  const ComplexMatrix plus = cols * cols.adjoint();
  ComplexMatrix a = 2.0 * plus - ComplexMatrix::Identity(dim, dim);
  a = 0.5 * (a + a.adjoint());
  return DichotomicObservable(a, std::move(label));
}

std::vector<DichotomicObservable> ObservableFrame::observables(
    const std::string& prefix) const {
  std::vector<DichotomicObservable> out;
  out.reserve(directions_.size());
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    out.push_back(pauli_observable(directions_[i],
                                   prefix + std::to_string(i + 1)));
  }
  return out;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> ObservableFrame::matrix() const {
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, directions_.size());
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i)) = directions_[i].vector();
  }
  return m;
}

ObservableFrame make_frame(std::span<const BlochVector> directions) {
  const std::size_t k = directions.size();
  if (k != 2 && k != 3) {
    throw Error(ErrorCode::NotOrthonormal,
                "a frame holds 2 or 3 directions, got " + std::to_string(k));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      worst = std::max(worst, std::abs(directions[i].dot(directions[j])));
    }
  }
  if (worst > kOrthoRepairTol) {
    throw Error(ErrorCode::NotOrthonormal,
                "max |v_i . v_j| = " + std::to_string(worst));
  }
  std::vector<BlochVector> dirs(directions.begin(), directions.end());
  if (worst > kOrthoAcceptTol) {
    std::vector<Vector3> basis;
    for (std::size_t i = 0; i < k; ++i) {
      Vector3 v = directions[i].vector();
      for (const Vector3& b : basis) v -= b.dot(v) * b;
      basis.push_back(v.normalized());
      dirs[i] = BlochVector::make(basis.back());
    }
  }
  Vector3 sum = Vector3::Zero();
  for (const BlochVector& d : dirs) sum += d.vector();
  sum /= std::sqrt(double(k));
  return ObservableFrame(std::move(dirs),
                         BlochVector::normalized(sum));
}

ObservableFrame make_frame(std::initializer_list<BlochVector> directions) {
  return make_frame(std::span<const BlochVector>(directions.begin(),
                                                 directions.size()));
}

ObservableFrame frame_from_columns(
    const Eigen::Matrix<double, 3, Eigen::Dynamic>& columns) {
  std::vector<BlochVector> dirs;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    dirs.push_back(BlochVector::normalized(columns.col(j)));
  }
  return make_frame(dirs);
}

ObservableFrame canonical_frame(int k) {
  if (k == 2) return make_frame({BlochVector::x(), BlochVector::y()});
  if (k == 3) {
    return make_frame({BlochVector::x(), BlochVector::y(), BlochVector::z()});
  }
  throw Error(ErrorCode::NotOrthonormal, "frames have 2 or 3 directions");
}

ObservableFrame frame_with_sum(const BlochVector& sum, int k) {
  const ObservableFrame base = canonical_frame(k);
  const Vector3 from = base.sum_direction().vector();
  const Vector3 w = from - sum.vector();
  Matrix3 h = Matrix3::Identity();
  if (w.norm() > 1e-14) h -= 2.0 * w * w.transpose() / w.squaredNorm();
  return frame_from_columns(h * base.matrix());
}

}  // namespace pseudoprob
