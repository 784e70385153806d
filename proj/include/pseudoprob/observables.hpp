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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudoprob/linalg.hpp"

namespace pseudoprob {

enum class Outcome : int { Minus = -1, Plus = 1 };

inline int sign(Outcome o) { return static_cast<int>(o); }
inline Outcome flip(Outcome o) {
  return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
}
inline char symbol(Outcome o) { return o == Outcome::Plus ? '+' : '-'; }

/// Unit vector on the Bloch sphere.
class BlochVector {
 public:
  /// Requires |v| = 1 within 1e-12.
  static BlochVector make(const Vector3& v);
  /// Rescales any finite nonzero vector.
  static BlochVector normalized(const Vector3& v);

  static BlochVector x() { return BlochVector(Vector3::UnitX()); }
  static BlochVector y() { return BlochVector(Vector3::UnitY()); }
  static BlochVector z() { return BlochVector(Vector3::UnitZ()); }

  const Vector3& vector() const { return v_; }
  double dot(const BlochVector& o) const { return v_.dot(o.v_); }
  BlochVector operator-() const { return BlochVector(-v_); }

 private:
  explicit BlochVector(const Vector3& v) : v_(v) {}
  Vector3 v_;
};

/// Hermitian operator with spectrum in {+1, -1}.
class DichotomicObservable {
 public:
  /// Validates Hermiticity and A^2 = 1 within 1e-10.
  DichotomicObservable(const ComplexMatrix& matrix, std::string label = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  /// Set for observables built from a Bloch direction.
  const std::optional<BlochVector>& direction() const { return direction_; }

  DichotomicObservable relabeled(std::string label) const;
  DichotomicObservable operator-() const;

 private:
  friend DichotomicObservable pauli_observable(const BlochVector&,
                                               std::string);
  ComplexMatrix matrix_;
  std::string label_;
  std::optional<BlochVector> direction_;
};

/// sigma . v for a unit Bloch vector.
DichotomicObservable pauli_observable(const BlochVector& v,
                                      std::string label = {});

/// Eigenprojector (1 + s A) / 2 for outcome s.
ComplexMatrix projector(const DichotomicObservable& obs, Outcome outcome);

/// A = P - (1 - P) with P a seeded Haar-random projector of rank rank_plus.
DichotomicObservable random_dichotomic(int dim, int rank_plus,
                                       std::uint64_t seed,
                                       std::string label = {});

/// An orthonormal doublet or triplet of Bloch directions. Handedness is
/// not constrained.
class ObservableFrame {
 public:
  const std::vector<BlochVector>& directions() const { return directions_; }
  /// Sum of the directions divided by sqrt(k).
  const BlochVector& sum_direction() const { return sum_direction_; }
  int size() const { return static_cast<int>(directions_.size()); }

  /// sigma . v_i for every direction, labeled prefix + (i+1).
  std::vector<DichotomicObservable> observables(
      const std::string& prefix = {}) const;
  /// Directions as the columns of a 3 x k matrix.
  Eigen::Matrix<double, 3, Eigen::Dynamic> matrix() const;

 private:
  friend ObservableFrame make_frame(std::span<const BlochVector>);
  ObservableFrame(std::vector<BlochVector> directions, BlochVector sum)
      : directions_(std::move(directions)), sum_direction_(sum) {}
  std::vector<BlochVector> directions_;
  BlochVector sum_direction_;
};

/// Accepts 2 or 3 pairwise orthogonal unit vectors. Pairs off by at most
/// 1e-6 are re-orthogonalized by Gram-Schmidt; beyond that NotOrthonormal.
ObservableFrame make_frame(std::span<const BlochVector> directions);
ObservableFrame make_frame(std::initializer_list<BlochVector> directions);

/// Frame from the columns of a 3 x k matrix with orthonormal columns.
ObservableFrame frame_from_columns(
    const Eigen::Matrix<double, 3, Eigen::Dynamic>& columns);

/// {x, y} for k = 2, {x, y, z} for k = 3.
ObservableFrame canonical_frame(int k);

/// A k-frame whose normalized sum equals `sum`: the canonical frame
/// reflected so that its sum direction lands on `sum`.
ObservableFrame frame_with_sum(const BlochVector& sum, int k);

}  // namespace pseudoprob
