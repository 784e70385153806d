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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pseudoprob/observables.hpp"
#include "pseudoprob/propositions.hpp"
#include "pseudoprob/random.hpp"
#include "pseudoprob/states.hpp"

namespace pseudoprob {

enum class WitnessKind { W0, W1, W2, W3, W4 };
inline constexpr std::array<WitnessKind, 5> kAllWitnesses = {
    WitnessKind::W0, WitnessKind::W1, WitnessKind::W2, WitnessKind::W3,
    WitnessKind::W4};

std::string_view to_string(WitnessKind kind);
WitnessKind parse_witness_kind(std::string_view text);

/// W0 bounds |value| from above; W1..W4 bound value from below.
enum class BoundDirection { Lower, Absolute };

double witness_bound(WitnessKind kind);
BoundDirection witness_direction(WitnessKind kind);
/// Number of correlation terms: 2 for W1/W2, 3 for W3/W4 (W0 has 4 terms
/// over arbitrary observables and reports 0).
int witness_rank(WitnessKind kind);

/// Strict-violation margin for detection.
inline constexpr double kDetectionTol = 1e-12;

/// Four dichotomic observables, A1/A2 on the first subsystem.
struct ChshObservables {
  DichotomicObservable a1, a2, b1, b2;
};

/// Qubit frames per side. Layout per kind:
///   W1: first {doublet}, second {triplet, triplet}
///   W2: first {doublet}, second {doublet}
///   W3: first {3 doublets}, second {3 triplets}
///   W4: first {triplet}, second {triplet}
struct FrameGeometry {
  std::vector<ObservableFrame> first;
  std::vector<ObservableFrame> second;
};

using WitnessGeometry = std::variant<ChshObservables, FrameGeometry>;

struct WitnessSpec {
  WitnessKind kind;
  WitnessGeometry geometry;
  double bound;
  BoundDirection direction;
};

/// Validates the geometry against the kind's constraints (BadGeometry).
WitnessSpec make_witness(WitnessKind kind, WitnessGeometry geometry);

/// Axis-aligned frames; for W0 a1 = x, a2 = z, b1,2 = (x +- z)/sqrt(2).
WitnessSpec canonical_witness(WitnessKind kind);

ChshObservables chsh_from_bloch(const BlochVector& a1, const BlochVector& a2,
                                const BlochVector& b1, const BlochVector& b2);

/// The orthonormal direction sets whose pairwise correlations a W1..W4
/// witness sums: sum_i <sigma.u_i Sigma.v_i>. For W1/W3 these are the
/// normalized sums of the triplets/doublets.
struct EffectiveDirections {
  Eigen::Matrix<double, 3, Eigen::Dynamic> first;
  Eigen::Matrix<double, 3, Eigen::Dynamic> second;
};

EffectiveDirections effective_directions(const WitnessSpec& spec);

/// Inverse of effective_directions: builds frames whose (sum) directions are
/// the given orthonormal columns.
WitnessSpec witness_from_directions(
    WitnessKind kind, const Eigen::Matrix<double, 3, Eigen::Dynamic>& first,
    const Eigen::Matrix<double, 3, Eigen::Dynamic>& second);

/// The witnessed correlation operator: A1B1 + A1B2 + A2B1 - A2B2 for W0,
/// sum_i sigma.u_i (x) Sigma.v_i otherwise.
ComplexMatrix correlation_operator(const WitnessSpec& spec);

// --- propositions -----------------------------------------------------------

/// {A1; B1 B2} v {!A1; !B1 !B2} v {A2; B1 !B2} v {!A2; !B1 B2}. Compiles to
/// 1/2 + (A1B1 + A1B2 + A2B1 - A2B2)/4.
Proposition chsh_proposition(const PropositionContext& context,
                             const std::string& a1, const std::string& a2,
                             const std::string& b1, const std::string& b2);

/// Context holding A1, A2 on subsystem 0 and B1, B2 on subsystem 1.
PropositionContext chsh_context(const ChshObservables& obs);

/// Disjunction over all sign patterns s of {A_i = s_i; Phi_i = s_i}.
/// Compiles to (1 + sum_i A_i Phi_i) / 2^k for orthonormal k-frames.
Proposition agreement_proposition(const PropositionContext& context,
                                  const std::vector<std::string>& first,
                                  const std::vector<std::string>& second);

/// Context with the frame observables A1..Ak on subsystem 0, F1..Fk on 1.
PropositionContext agreement_context(const ObservableFrame& first,
                                     const ObservableFrame& second);

// --- scheme sums --------------------------------------------------------------

/// Sum of four conjunction pseudo projections
/// {A1; Phi+++} + {!A1; Phi---} + {A2; Theta+++} + {!A2; Theta---}.
/// Requires triplets with orthogonal normalized sums.
ComplexMatrix scheme_sum_s1(const BlochVector& a1, const BlochVector& a2,
                            const ObservableFrame& phi,
                            const ObservableFrame& theta);

/// Sum over three (doublet, triplet) pairs of the all-plus and all-minus
/// conjunctions. Both sets of normalized sums must be orthonormal.
ComplexMatrix scheme_sum_s2(std::span<const ObservableFrame> doublets,
                            std::span<const ObservableFrame> triplets);

/// As scheme_sum_s2 with triplets on both sides.
ComplexMatrix scheme_sum_s3(std::span<const ObservableFrame> first,
                            std::span<const ObservableFrame> second);

// --- operator identities ------------------------------------------------------

/// The six constructions that reduce to a * 1 + b * correlation_operator.
enum class IdentityRoute {
  ChshProposition,
  AgreementDoublet,
  AgreementTriplet,
  SchemeS1,
  SchemeS2,
  SchemeS3,
};

inline constexpr std::array<IdentityRoute, 6> kAllRoutes = {
    IdentityRoute::ChshProposition, IdentityRoute::AgreementDoublet,
    IdentityRoute::AgreementTriplet, IdentityRoute::SchemeS1,
    IdentityRoute::SchemeS2,        IdentityRoute::SchemeS3};

std::string_view to_string(IdentityRoute route);

struct AffineCoefficients {
  double a;
  double b;
};

AffineCoefficients identity_coefficients(IdentityRoute route);
WitnessKind route_kind(IdentityRoute route);

/// Operator built from pseudo projections for the route and a geometry of
/// route_kind(route). SchemeS3 derives its triplet geometry from a W4
/// geometry via frame_with_sum; a non-null spin draws a random rotation or
/// reflection of each triplet about its sum.
ComplexMatrix route_operator(IdentityRoute route, const WitnessSpec& spec,
                             Rng* spin = nullptr);

/// max |route_operator - (a + b * correlation_operator)|.
double identity_residual(IdentityRoute route, const WitnessSpec& spec,
                         AffineCoefficients coefficients, Rng* spin = nullptr);
double identity_residual(IdentityRoute route, const WitnessSpec& spec,
                         Rng* spin = nullptr);

/// Random valid geometry: random O(3) frames, random spin of each frame
/// about its sum direction. W0 draws four independent Bloch vectors.
WitnessSpec random_witness(WitnessKind kind, Rng& rng);

// --- evaluation ---------------------------------------------------------------

struct WitnessReport {
  WitnessKind kind;
  double value;
  double bound;
  BoundDirection direction;
  bool detected;
  WitnessGeometry geometry;
  /// Pseudo probability (or sum) from the proposition / scheme route.
  std::optional<double> scheme_sum;
  /// |scheme_sum - (a + b value)|.
  std::optional<double> scheme_residual;
};

bool violates(WitnessKind kind, double value);

struct EvaluateOptions {
  bool cross_check = true;
};

/// Correlation value, detection flag, and (optionally) the pseudo-probability
/// route recomputed and checked against a + b * value.
WitnessReport evaluate(const WitnessSpec& spec, const DensityMatrix& rho,
                       EvaluateOptions options = {});

/// Two-term form of W0 for orthogonal pairs a1 _|_ a2, b1 _|_ b2:
/// <sigma.a1 Sigma.b + sigma.a2 Sigma.b'> with b, b' = (b1 +- b2)/sqrt 2.
/// Equals the CHSH value divided by sqrt 2; nonlocal when |value| > sqrt 2.
struct TwoTermChsh {
  double value;
  double bound;
  bool nonlocal;
};

TwoTermChsh chsh_two_term(const DensityMatrix& rho, const BlochVector& a1,
                          const BlochVector& a2, const BlochVector& b1,
                          const BlochVector& b2);

/// The 48 axis permutations x sign flips: first side = P e_i, second side =
/// S P e_i. For diagonal correlation tensors these realize every polytope
/// face.
std::vector<WitnessSpec> sign_permutation_orbit(WitnessKind kind);

}  // namespace pseudoprob
