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

#include <functional>

#include "oracles.hpp"
#include "pseudoprob/observables.hpp"

using namespace pseudoprob;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("pauli_observable from Bloch vectors") {
  CHECK(pauli_observable(BlochVector::z()).matrix().isApprox(oracle::pauli(3)));
  CHECK(pauli_observable(BlochVector::x()).matrix().isApprox(oracle::pauli(1)));

  const double s = 1.0 / std::sqrt(2.0);
  const auto d = pauli_observable(BlochVector::make({s, 0, s}), "D");
  CHECK(d.matrix().isApprox(s * (oracle::pauli(1) + oracle::pauli(3))));
  const auto ev = hermitian_eigenvalues(d.matrix());
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-12));
  CHECK_THAT(ev[1], WithinAbs(1.0, 1e-12));
  CHECK(d.label() == "D");
  REQUIRE(d.direction().has_value());
  CHECK(d.direction()->vector().isApprox(Vector3(s, 0, s)));
}

TEST_CASE("BlochVector::make requires unit norm") {
  CHECK(code_of([] { BlochVector::make({1, 1, 0}); }) == ErrorCode::NotUnit);
  CHECK(code_of([] { BlochVector::normalized({0, 0, 0}); }) == ErrorCode::NotUnit);
  CHECK(BlochVector::normalized({0, 3, 4}).vector().isApprox(Vector3(0, 0.6, 0.8)));
}

TEST_CASE("projector onto outcomes") {
  const auto z = pauli_observable(BlochVector::z());
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1;
  CHECK(projector(z, Outcome::Plus).isApprox(up));

  const auto x = pauli_observable(BlochVector::x());
  ComplexMatrix minus(2, 2);
  minus << 0.5, -0.5, -0.5, 0.5;
  CHECK(projector(x, Outcome::Minus).isApprox(minus));

  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a.diagonal() << 1, 1, -1, -1;
  ComplexMatrix lower = ComplexMatrix::Zero(4, 4);
  lower.diagonal() << 0, 0, 1, 1;
  CHECK(projector(DichotomicObservable(a), Outcome::Minus).isApprox(lower));
}

TEST_CASE("DichotomicObservable validation") {
  ComplexMatrix not_herm(2, 2);
  not_herm << 0, 1, 0, 0;
  CHECK(code_of([&] { DichotomicObservable o(not_herm); }) ==
        ErrorCode::NotHermitian);
  CHECK(code_of([] { DichotomicObservable o(0.5 * oracle::pauli(3)); }) ==
        ErrorCode::NotDichotomic);
}

TEST_CASE("random_dichotomic") {
  const auto q = random_dichotomic(2, 1, 11);
  // every 2x2 dichotomic with mixed spectrum is traceless
  CHECK_THAT(std::abs(q.matrix().trace()), WithinAbs(0.0, 1e-12));

  const auto t = random_dichotomic(3, 1, 5);
  const auto ev = hermitian_eigenvalues(t.matrix());
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-10));
  CHECK_THAT(ev[1], WithinAbs(-1.0, 1e-10));
  CHECK_THAT(ev[2], WithinAbs(1.0, 1e-10));

  CHECK(random_dichotomic(4, 2, 99).matrix() == random_dichotomic(4, 2, 99).matrix());
  CHECK(code_of([] { random_dichotomic(3, 3, 1); }) == ErrorCode::BadRank);
}

TEST_CASE("frames and their sum directions") {
  const auto triplet = make_frame({BlochVector::x(), BlochVector::y(), BlochVector::z()});
  CHECK(triplet.sum_direction().vector().isApprox(Vector3(1, 1, 1) / std::sqrt(3.0)));
  const auto doublet = make_frame({BlochVector::x(), BlochVector::z()});
  CHECK(doublet.sum_direction().vector().isApprox(Vector3(1, 0, 1) / std::sqrt(2.0)));
  CHECK(code_of([] { make_frame({BlochVector::x(), BlochVector::x()}); }) ==
        ErrorCode::NotOrthonormal);
  CHECK(code_of([] { make_frame({BlochVector::x()}); }) == ErrorCode::NotOrthonormal);
}

TEST_CASE("frames within 1e-6 of orthogonal are repaired") {
  const auto nearly = BlochVector::normalized({1e-7, 1, 0});
  const auto f = make_frame({BlochVector::x(), nearly});
  CHECK(std::abs(f.directions()[0].dot(f.directions()[1])) < 1e-15);

  const auto far = BlochVector::normalized({1e-3, 1, 0});
  CHECK(code_of([&] { make_frame({BlochVector::x(), far}); }) ==
        ErrorCode::NotOrthonormal);
}

TEST_CASE("frame_with_sum lands on the requested sum direction") {
  for (int k : {2, 3}) {
    for (const Vector3& v : {Vector3(0.3, -0.5, 0.8), Vector3(-1, 0, 0),
                             Vector3(1, 1, 1), Vector3(0, 0, 1)}) {
      const auto sum = BlochVector::normalized(v);
      const auto f = frame_with_sum(sum, k);
      CHECK(f.size() == k);
      CHECK((f.sum_direction().vector() - sum.vector()).norm() < 1e-12);
      const Eigen::MatrixXd gram = f.matrix().transpose() * f.matrix();
      CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("frame observables carry prefixed labels") {
  const auto obs = canonical_frame(3).observables("F");
  REQUIRE(obs.size() == 3);
  CHECK(obs[0].label() == "F1");
  CHECK(obs[2].label() == "F3");
  CHECK(obs[1].matrix().isApprox(oracle::pauli(2)));
}
