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
#include "pseudoprob/propositions.hpp"

using namespace pseudoprob;
using Catch::Matchers::WithinAbs;

namespace {

PropositionContext xz_context() {
  return PropositionContext({Subsystem{
      2, {pauli_observable(BlochVector::x(), "X"),
          pauli_observable(BlochVector::z(), "Z")}}});
}

ComplexMatrix bloch_state(const Vector3& r) {
  return 0.5 * (oracle::pauli(0) + oracle::sigma(r));
}

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

TEST_CASE("parser builds the expected tree") {
  const Proposition p = parse_proposition("(X=+ & Z=-) | !X=-1");
  CHECK(p.to_string() == "((X=+ & Z=-) | !X=-)");
  const Proposition q = parse_proposition("X=+ & Z=+1 & X=+");
  REQUIRE(q.is_conjunction());
  CHECK(q.literals().size() == 3);
  CHECK(parse_proposition("  Z=- ").is_literal());
}

TEST_CASE("parser errors") {
  for (const char* bad : {"", "X", "X=", "X=0", "(X=+", "X=+ &", "X=+ )", "=+"}) {
    CHECK(code_of([&] { parse_proposition(bad); }) == ErrorCode::Parse);
  }
}

TEST_CASE("literal, negation and conjunction compile as expected") {
  const auto ctx = xz_context();
  const auto I = oracle::pauli(0);
  const auto X = oracle::pauli(1);
  const auto Z = oracle::pauli(3);

  const auto lit = compile(parse_proposition("X=+"), ctx);
  CHECK(oracle::max_abs_diff(lit.op, 0.5 * (I + X)) < 1e-15);

  const auto neg = compile(parse_proposition("!X=+"), ctx);
  CHECK(oracle::max_abs_diff(neg.op, 0.5 * (I - X)) < 1e-15);
  CHECK(neg.rules.front() == "negation");

  const auto both = compile(parse_proposition("X=+ & Z=+"), ctx);
  CHECK(oracle::max_abs_diff(both.op, 0.25 * (I + X + Z)) < 1e-15);

  const auto dup = compile(parse_proposition("X=+ & X=+ & Z=+"), ctx);
  CHECK(oracle::max_abs_diff(dup.op, both.op) < 1e-15);
}

TEST_CASE("disjunction over every outcome tuple is the identity") {
  const auto ctx = xz_context();
  const auto p = parse_proposition("(X=+ & Z=+) | (X=+ & Z=-) | (X=- & Z=+) | (X=- & Z=-)");
  const auto c = compile(p, ctx);
  CHECK(oracle::max_abs_diff(c.op, oracle::pauli(0)) < 1e-15);
  CHECK(c.rules.front() == "disjunction:disjoint-sum");
}

TEST_CASE("binary overlapping disjunction uses inclusion-exclusion") {
  const auto ctx = xz_context();
  const auto c = compile(parse_proposition("X=+ | Z=+"), ctx);
  const auto I = oracle::pauli(0);
  const auto X = oracle::pauli(1);
  const auto Z = oracle::pauli(3);
  const ComplexMatrix expected = 0.5 * (I + X) + 0.5 * (I + Z) - 0.25 * (I + X + Z);
  CHECK(oracle::max_abs_diff(c.op, expected) < 1e-15);
  CHECK(is_hermitian(c.op));
  CHECK_THAT(c.op.trace().real(), WithinAbs(1.5, 1e-14));
  CHECK(c.rules.front() == "disjunction:inclusion-exclusion");
}

TEST_CASE("unsupported shapes are rejected") {
  const auto ctx = xz_context();
  CHECK(code_of([&] { compile(parse_proposition("X=+ | Z=+ | X=-"), ctx); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(code_of([&] { compile(parse_proposition("(X=+ | Z=+) | !X=+"), ctx); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(code_of([&] { parse_proposition("(X=+ | Z=+) & X=-"); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(code_of([&] { compile(parse_proposition("Q=+"), ctx); }) ==
        ErrorCode::UnknownLabel);
}

TEST_CASE("pseudo probabilities of single-qubit conjunctions") {
  const auto ctx = xz_context();
  CHECK_THAT(pseudo_probability(bloch_state({0, 0, 1}), parse_proposition("X=+ & Z=+"), ctx),
             WithinAbs(0.5, 1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  const auto check = classicality_check(bloch_state({r, 0, -r}),
                                        parse_proposition("X=- & Z=+"), ctx);
  CHECK_THAT(check.value, WithinAbs((1 - std::sqrt(2.0)) / 4, 1e-12));
  CHECK_FALSE(check.classical);

  const auto taut = parse_proposition(
      "(X=+ & Z=+) | (X=+ & Z=-) | (X=- & Z=+) | (X=- & Z=-)");
  CHECK_THAT(pseudo_probability(bloch_state({0.3, 0.1, -0.5}), taut, ctx),
             WithinAbs(1.0, 1e-14));
  CHECK(code_of([&] {
          pseudo_probability(ComplexMatrix::Identity(4, 4) / 4, taut, ctx);
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("maximally mixed state gives Tr(op)/dim") {
  const auto ctx = xz_context();
  const auto p = parse_proposition("X=+ | Z=-");
  const auto c = compile(p, ctx);
  const double v = pseudo_probability(0.5 * oracle::pauli(0), p, ctx);
  CHECK_THAT(v, WithinAbs(c.op.trace().real() / 2, 1e-14));
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
}

TEST_CASE("duplicate labels in a context are rejected") {
  CHECK(code_of([] {
          PropositionContext ctx({Subsystem{
              2, {pauli_observable(BlochVector::x(), "A"),
                  pauli_observable(BlochVector::z(), "A")}}});
        }) == ErrorCode::UnknownLabel);
}
