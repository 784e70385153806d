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

#include "pseudoprob/random.hpp"

#include <cmath>

namespace pseudoprob {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Vector3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> normal;
  Vector3 v;
  do {
    v = Vector3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity so the distribution is Haar
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix3 random_orthogonal(Rng& rng, bool allow_reflection) {
  std::normal_distribution<double> normal;
  Matrix3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix3> qr(g);
  Matrix3 q = qr.householderQ();
  const Matrix3 r = qr.matrixQR();
  for (int j = 0; j < 3; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0) q.col(2) *= -1.0;
  if (allow_reflection && std::bernoulli_distribution(0.5)(rng)) q *= -1.0;
  return q;
}

}  // namespace pseudoprob
