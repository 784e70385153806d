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

#include "pseudoprob/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pseudoprob {

namespace {

constexpr double kGeometryTol = 1e-10;
/// Cross-check tolerance between the correlation and pseudo-probability
/// routes inside evaluate().
constexpr double kRouteTol = 1e-9;

using Columns = Eigen::Matrix<double, 3, Eigen::Dynamic>;

[[noreturn]] void bad_geometry(WitnessKind kind, const std::string& why) {
  throw Error(ErrorCode::BadGeometry,
              std::string(to_string(kind)) + ": " + why);
}

void require_orthonormal(const Columns& m, WitnessKind kind,
                         const std::string& what) {
  const Eigen::MatrixXd gram = m.transpose() * m;
  const double dev =
      (gram - Eigen::MatrixXd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
  if (dev > kGeometryTol) {
    bad_geometry(kind, what + " are not orthonormal (deviation " +
                           std::to_string(dev) + ")");
  }
}

Columns sums_of(const std::vector<ObservableFrame>& frames) {
  Columns out(3, frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = frames[i].sum_direction().vector();
  }
  return out;
}

void require_sizes(WitnessKind kind, const std::vector<ObservableFrame>& frames,
                   std::size_t count, int size, const char* side) {
  if (frames.size() != count) {
    bad_geometry(kind, std::string(side) + " side needs " +
                           std::to_string(count) + " frame(s)");
  }
  for (const ObservableFrame& f : frames) {
    if (f.size() != size) {
      bad_geometry(kind, std::string(side) + " side frames need " +
                             std::to_string(size) + " directions");
    }
  }
}

Columns first_columns(int k) { return Matrix3::Identity().leftCols(k); }

ComplexMatrix pauli_dot(const Vector3& v) {
  return v.x() * pauli(1) + v.y() * pauli(2) + v.z() * pauli(3);
}

/// All-plus and all-minus conjunctions for each (first[j], second[j]) frame
/// pair, summed.
ComplexMatrix paired_extremes(std::span<const ObservableFrame> first,
                              std::span<const ObservableFrame> second) {
  Subsystem left{2, {}};
  Subsystem right{2, {}};
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      groups;
  for (std::size_t j = 0; j < first.size(); ++j) {
    const std::string lp = "L" + std::to_string(j + 1) + "_";
    const std::string rp = "R" + std::to_string(j + 1) + "_";
    std::vector<std::string> ll;
    std::vector<std::string> rl;
    for (auto& o : first[j].observables(lp)) {
      ll.push_back(o.label());
      left.observables.push_back(std::move(o));
    }
    for (auto& o : second[j].observables(rp)) {
      rl.push_back(o.label());
      right.observables.push_back(std::move(o));
    }
    groups.emplace_back(std::move(ll), std::move(rl));
  }
  const PropositionContext ctx({std::move(left), std::move(right)});
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& [ll, rl] : groups) {
    for (Outcome s : {Outcome::Plus, Outcome::Minus}) {
      std::vector<Proposition> lits;
      for (const auto& l : ll) lits.push_back(literal(l, s));
      for (const auto& r : rl) lits.push_back(literal(r, s));
      sum += compile(conjunction(lits), ctx).op;
    }
  }
  return sum;
}

Matrix3 rotation_about(const Vector3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

ObservableFrame spin_frame(const ObservableFrame& frame, Rng& rng) {
  const Vector3 u = frame.sum_direction().vector();
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Matrix3 m = rotation_about(u, angle(rng));
  if (std::bernoulli_distribution(0.5)(rng)) {
    // reflection through a plane containing u
    Vector3 w = u.unitOrthogonal();
    m = (Matrix3::Identity() - 2.0 * w * w.transpose()) * m;
  }
  return frame_from_columns(m * frame.matrix());
}

}  // namespace

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::W0: return "W0";
    case WitnessKind::W1: return "W1";
    case WitnessKind::W2: return "W2";
    case WitnessKind::W3: return "W3";
    case WitnessKind::W4: return "W4";
  }
  return "?";
}

WitnessKind parse_witness_kind(std::string_view text) {
  for (WitnessKind k : kAllWitnesses) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::Parse, "unknown witness kind '" + std::string(text) +
                                    "' (expected W0..W4)");
}

double witness_bound(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::W0: return 2.0;
    case WitnessKind::W1: return -2.0 / std::sqrt(3.0);
    case WitnessKind::W2: return -1.0;
    case WitnessKind::W3: return -std::sqrt(1.5);
    case WitnessKind::W4: return -1.0;
  }
  return 0.0;
}

BoundDirection witness_direction(WitnessKind kind) {
  return kind == WitnessKind::W0 ? BoundDirection::Absolute
                                 : BoundDirection::Lower;
}

int witness_rank(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::W0: return 0;
    case WitnessKind::W1:
    case WitnessKind::W2: return 2;
    case WitnessKind::W3:
    case WitnessKind::W4: return 3;
  }
  return 0;
}

bool violates(WitnessKind kind, double value) {
  const double bound = witness_bound(kind);
  if (witness_direction(kind) == BoundDirection::Absolute) {
    return std::abs(value) > bound + kDetectionTol;
  }
  return value < bound - kDetectionTol;
}

WitnessSpec make_witness(WitnessKind kind, WitnessGeometry geometry) {
  if (kind == WitnessKind::W0) {
    const auto* obs = std::get_if<ChshObservables>(&geometry);
    if (obs == nullptr) bad_geometry(kind, "needs four dichotomic observables");
    if (obs->a1.dim() != obs->a2.dim() || obs->b1.dim() != obs->b2.dim()) {
      bad_geometry(kind, "observables on one side act on different dims");
    }
  } else {
    const auto* g = std::get_if<FrameGeometry>(&geometry);
    if (g == nullptr) bad_geometry(kind, "needs qubit frames");
    switch (kind) {
      case WitnessKind::W1:
        require_sizes(kind, g->first, 1, 2, "first");
        require_sizes(kind, g->second, 2, 3, "second");
        require_orthonormal(sums_of(g->second), kind,
                            "second-side triplet sums");
        break;
      case WitnessKind::W2:
        require_sizes(kind, g->first, 1, 2, "first");
        require_sizes(kind, g->second, 1, 2, "second");
        break;
      case WitnessKind::W3:
        require_sizes(kind, g->first, 3, 2, "first");
        require_sizes(kind, g->second, 3, 3, "second");
        require_orthonormal(sums_of(g->first), kind, "doublet sums");
        require_orthonormal(sums_of(g->second), kind, "triplet sums");
        break;
      case WitnessKind::W4:
        require_sizes(kind, g->first, 1, 3, "first");
        require_sizes(kind, g->second, 1, 3, "second");
        break;
      case WitnessKind::W0: break;
    }
  }
  return WitnessSpec{kind, std::move(geometry), witness_bound(kind),
                     witness_direction(kind)};
}

ChshObservables chsh_from_bloch(const BlochVector& a1, const BlochVector& a2,
                                const BlochVector& b1, const BlochVector& b2) {
  return ChshObservables{pauli_observable(a1, "A1"), pauli_observable(a2, "A2"),
                         pauli_observable(b1, "B1"),
                         pauli_observable(b2, "B2")};
}

WitnessSpec canonical_witness(WitnessKind kind) {
  if (kind == WitnessKind::W0) {
    const Vector3 x = Vector3::UnitX();
    const Vector3 z = Vector3::UnitZ();
    return make_witness(
        kind, chsh_from_bloch(BlochVector::x(), BlochVector::z(),
                              BlochVector::normalized(x + z),
                              BlochVector::normalized(x - z)));
  }
  const int k = witness_rank(kind);
  return witness_from_directions(kind, first_columns(k), first_columns(k));
}

EffectiveDirections effective_directions(const WitnessSpec& spec) {
  const auto* g = std::get_if<FrameGeometry>(&spec.geometry);
  if (g == nullptr) {
    bad_geometry(spec.kind, "effective directions exist for W1..W4 only");
  }
  switch (spec.kind) {
    case WitnessKind::W1:
      return {g->first[0].matrix(), sums_of(g->second)};
    case WitnessKind::W2:
    case WitnessKind::W4:
      return {g->first[0].matrix(), g->second[0].matrix()};
    case WitnessKind::W3:
      return {sums_of(g->first), sums_of(g->second)};
    case WitnessKind::W0: break;
  }
  bad_geometry(spec.kind, "unreachable");
}

WitnessSpec witness_from_directions(WitnessKind kind, const Columns& first,
                                    const Columns& second) {
  const int k = witness_rank(kind);
  if (k == 0 || first.cols() != k || second.cols() != k) {
    bad_geometry(kind, "expected " + std::to_string(k) +
                           " direction columns per side");
  }
  require_orthonormal(first, kind, "first-side directions");
  require_orthonormal(second, kind, "second-side directions");
  auto with_sums = [](const Columns& m, int frame_size) {
    std::vector<ObservableFrame> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(
          frame_with_sum(BlochVector::normalized(m.col(j)), frame_size));
    }
    return out;
  };
  FrameGeometry g;
  switch (kind) {
    case WitnessKind::W1:
      g.first = {frame_from_columns(first)};
      g.second = with_sums(second, 3);
      break;
    case WitnessKind::W2:
    case WitnessKind::W4:
      g.first = {frame_from_columns(first)};
      g.second = {frame_from_columns(second)};
      break;
    case WitnessKind::W3:
      g.first = with_sums(first, 2);
      g.second = with_sums(second, 3);
      break;
    case WitnessKind::W0: break;
  }
  return make_witness(kind, std::move(g));
}

ComplexMatrix correlation_operator(const WitnessSpec& spec) {
  if (const auto* obs = std::get_if<ChshObservables>(&spec.geometry)) {
    const ComplexMatrix& a1 = obs->a1.matrix();
    const ComplexMatrix& a2 = obs->a2.matrix();
    const ComplexMatrix& b1 = obs->b1.matrix();
    const ComplexMatrix& b2 = obs->b2.matrix();
    return kron(a1, b1) + kron(a1, b2) + kron(a2, b1) - kron(a2, b2);
  }
  const EffectiveDirections d = effective_directions(spec);
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < d.first.cols(); ++i) {
    out += kron(pauli_dot(d.first.col(i)), pauli_dot(d.second.col(i)));
  }
  return out;
}

// --- propositions -----------------------------------------------------------

Proposition chsh_proposition(const PropositionContext& context,
                             const std::string& a1, const std::string& a2,
                             const std::string& b1, const std::string& b2) {
  for (const auto& l : {a1, a2}) {
    if (context.subsystem_of(l) != 0) {
      throw Error(ErrorCode::SubsystemMismatch,
                  "'" + l + "' must belong to the first subsystem");
    }
  }
  for (const auto& l : {b1, b2}) {
    if (context.subsystem_of(l) != 1) {
      throw Error(ErrorCode::SubsystemMismatch,
                  "'" + l + "' must belong to the second subsystem");
    }
  }
  const auto P = Outcome::Plus;
  const auto M = Outcome::Minus;
  auto term = [](const std::string& a, Outcome sa, const std::string& x,
                 Outcome sx, const std::string& y, Outcome sy) {
    return conjunction({literal(a, sa), literal(x, sx), literal(y, sy)});
  };
  return disjunction({term(a1, P, b1, P, b2, P), term(a1, M, b1, M, b2, M),
                      term(a2, P, b1, P, b2, M), term(a2, M, b1, M, b2, P)});
}

PropositionContext chsh_context(const ChshObservables& obs) {
  Subsystem a{obs.a1.dim(), {obs.a1.relabeled("A1"), obs.a2.relabeled("A2")}};
  Subsystem b{obs.b1.dim(), {obs.b1.relabeled("B1"), obs.b2.relabeled("B2")}};
  return PropositionContext({std::move(a), std::move(b)});
}

Proposition agreement_proposition(const PropositionContext& context,
                                  const std::vector<std::string>& first,
                                  const std::vector<std::string>& second) {
  const std::size_t k = first.size();
  if (k != second.size() || (k != 2 && k != 3)) {
    throw Error(ErrorCode::BadFrames,
                "need matched doublets or triplets on both sides");
  }
  auto check_side = [&](const std::vector<std::string>& labels, int side) {
    Columns m(3, labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (context.subsystem_of(labels[i]) != side) {
        throw Error(ErrorCode::SubsystemMismatch,
                    "'" + labels[i] + "' is on the wrong subsystem");
      }
      const auto& dir = context.observable(labels[i]).direction();
      if (!dir) {
        throw Error(ErrorCode::BadFrames,
                    "'" + labels[i] + "' is not a Bloch observable");
      }
      m.col(static_cast<Eigen::Index>(i)) = dir->vector();
    }
    const Eigen::MatrixXd gram = m.transpose() * m;
    if ((gram - Eigen::MatrixXd::Identity(m.cols(), m.cols()))
            .cwiseAbs()
            .maxCoeff() > kGeometryTol) {
      throw Error(ErrorCode::BadFrames, "frame is not orthonormal");
    }
  };
  check_side(first, 0);
  check_side(second, 1);

  std::vector<Proposition> terms;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
    std::vector<Proposition> lits;
    for (std::size_t i = 0; i < k; ++i) {
      const Outcome s = ((pattern >> (k - 1 - i)) & 1u) ? Outcome::Minus
                                                         : Outcome::Plus;
      lits.push_back(literal(first[i], s));
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Outcome s = ((pattern >> (k - 1 - i)) & 1u) ? Outcome::Minus
                                                         : Outcome::Plus;
      lits.push_back(literal(second[i], s));
    }
    terms.push_back(conjunction(lits));
  }
  return disjunction(std::move(terms));
}

PropositionContext agreement_context(const ObservableFrame& first,
                                     const ObservableFrame& second) {
  return PropositionContext(
      {Subsystem{2, first.observables("A")}, Subsystem{2, second.observables("F")}});
}

// --- scheme sums --------------------------------------------------------------

ComplexMatrix scheme_sum_s1(const BlochVector& a1, const BlochVector& a2,
                            const ObservableFrame& phi,
                            const ObservableFrame& theta) {
  if (phi.size() != 3 || theta.size() != 3) {
    bad_geometry(WitnessKind::W1, "S1 needs two triplets");
  }
  if (std::abs(phi.sum_direction().dot(theta.sum_direction())) > kGeometryTol) {
    bad_geometry(WitnessKind::W1, "triplet sums must be orthogonal");
  }
  Subsystem left{2, {pauli_observable(a1, "A1"), pauli_observable(a2, "A2")}};
  Subsystem right{2, {}};
  for (auto& o : phi.observables("P")) right.observables.push_back(std::move(o));
  for (auto& o : theta.observables("T")) right.observables.push_back(std::move(o));
  const PropositionContext ctx({std::move(left), std::move(right)});

  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& [a, f] : {std::pair{"A1", "P"}, std::pair{"A2", "T"}}) {
    for (Outcome s : {Outcome::Plus, Outcome::Minus}) {
      std::vector<Proposition> lits{literal(a, s)};
      for (int i = 1; i <= 3; ++i) {
        lits.push_back(literal(std::string(f) + std::to_string(i), s));
      }
      sum += compile(conjunction(lits), ctx).op;
    }
  }
  return sum;
}

ComplexMatrix scheme_sum_s2(std::span<const ObservableFrame> doublets,
                            std::span<const ObservableFrame> triplets) {
  const std::vector<ObservableFrame> d(doublets.begin(), doublets.end());
  const std::vector<ObservableFrame> t(triplets.begin(), triplets.end());
  require_sizes(WitnessKind::W3, d, 3, 2, "first");
  require_sizes(WitnessKind::W3, t, 3, 3, "second");
  require_orthonormal(sums_of(d), WitnessKind::W3, "doublet sums");
  require_orthonormal(sums_of(t), WitnessKind::W3, "triplet sums");
  return paired_extremes(doublets, triplets);
}

ComplexMatrix scheme_sum_s3(std::span<const ObservableFrame> first,
                            std::span<const ObservableFrame> second) {
  const std::vector<ObservableFrame> a(first.begin(), first.end());
  const std::vector<ObservableFrame> b(second.begin(), second.end());
  require_sizes(WitnessKind::W4, a, 3, 3, "first");
  require_sizes(WitnessKind::W4, b, 3, 3, "second");
  require_orthonormal(sums_of(a), WitnessKind::W4, "first-side triplet sums");
  require_orthonormal(sums_of(b), WitnessKind::W4, "second-side triplet sums");
  return paired_extremes(first, second);
}

// --- operator identities ------------------------------------------------------

std::string_view to_string(IdentityRoute route) {
  switch (route) {
    case IdentityRoute::ChshProposition: return "W0-proposition";
    case IdentityRoute::AgreementDoublet: return "W2-proposition";
    case IdentityRoute::AgreementTriplet: return "W4-proposition";
    case IdentityRoute::SchemeS1: return "S1";
    case IdentityRoute::SchemeS2: return "S2";
    case IdentityRoute::SchemeS3: return "S3";
  }
  return "?";
}

AffineCoefficients identity_coefficients(IdentityRoute route) {
  switch (route) {
    case IdentityRoute::ChshProposition: return {0.5, 0.25};
    case IdentityRoute::AgreementDoublet: return {0.25, 0.25};
    case IdentityRoute::AgreementTriplet: return {0.125, 0.125};
    case IdentityRoute::SchemeS1: return {0.25, std::sqrt(3.0) / 8.0};
    case IdentityRoute::SchemeS2: return {3.0 / 16.0, std::sqrt(6.0) / 16.0};
    case IdentityRoute::SchemeS3: return {3.0 / 32.0, 3.0 / 32.0};
  }
  return {0.0, 0.0};
}

WitnessKind route_kind(IdentityRoute route) {
  switch (route) {
    case IdentityRoute::ChshProposition: return WitnessKind::W0;
    case IdentityRoute::AgreementDoublet: return WitnessKind::W2;
    case IdentityRoute::AgreementTriplet: return WitnessKind::W4;
    case IdentityRoute::SchemeS1: return WitnessKind::W1;
    case IdentityRoute::SchemeS2: return WitnessKind::W3;
    case IdentityRoute::SchemeS3: return WitnessKind::W4;
  }
  return WitnessKind::W0;
}

ComplexMatrix route_operator(IdentityRoute route, const WitnessSpec& spec,
                             Rng* spin) {
  if (spec.kind != route_kind(route)) {
    bad_geometry(spec.kind, "geometry does not match identity route " +
                                std::string(to_string(route)));
  }
  switch (route) {
    case IdentityRoute::ChshProposition: {
      const auto& obs = std::get<ChshObservables>(spec.geometry);
      const PropositionContext ctx = chsh_context(obs);
      return compile(chsh_proposition(ctx, "A1", "A2", "B1", "B2"), ctx).op;
    }
    case IdentityRoute::AgreementDoublet:
    case IdentityRoute::AgreementTriplet: {
      const auto& g = std::get<FrameGeometry>(spec.geometry);
      const PropositionContext ctx = agreement_context(g.first[0], g.second[0]);
      std::vector<std::string> a;
      std::vector<std::string> f;
      for (int i = 1; i <= g.first[0].size(); ++i) {
        a.push_back("A" + std::to_string(i));
        f.push_back("F" + std::to_string(i));
      }
      return compile(agreement_proposition(ctx, a, f), ctx).op;
    }
    case IdentityRoute::SchemeS1: {
      const auto& g = std::get<FrameGeometry>(spec.geometry);
      const auto& a = g.first[0].directions();
      return scheme_sum_s1(a[0], a[1], g.second[0], g.second[1]);
    }
    case IdentityRoute::SchemeS2: {
      const auto& g = std::get<FrameGeometry>(spec.geometry);
      return scheme_sum_s2(g.first, g.second);
    }
    case IdentityRoute::SchemeS3: {
      const EffectiveDirections d = effective_directions(spec);
      std::vector<ObservableFrame> a;
      std::vector<ObservableFrame> b;
      for (Eigen::Index j = 0; j < 3; ++j) {
        a.push_back(frame_with_sum(BlochVector::normalized(d.first.col(j)), 3));
        b.push_back(
            frame_with_sum(BlochVector::normalized(d.second.col(j)), 3));
        if (spin != nullptr) {
          a.back() = spin_frame(a.back(), *spin);
          b.back() = spin_frame(b.back(), *spin);
        }
      }
      return scheme_sum_s3(a, b);
    }
  }
  bad_geometry(spec.kind, "unreachable");
}

double identity_residual(IdentityRoute route, const WitnessSpec& spec,
                         AffineCoefficients c, Rng* spin) {
  const ComplexMatrix op = route_operator(route, spec, spin);
  const auto dim = op.rows();
  const ComplexMatrix expected = c.a * ComplexMatrix::Identity(dim, dim) +
                                 c.b * correlation_operator(spec);
  return max_abs(op - expected);
}

double identity_residual(IdentityRoute route, const WitnessSpec& spec,
                         Rng* spin) {
  return identity_residual(route, spec, identity_coefficients(route), spin);
}

WitnessSpec random_witness(WitnessKind kind, Rng& rng) {
  if (kind == WitnessKind::W0) {
    return make_witness(
        kind, chsh_from_bloch(BlochVector::normalized(random_unit_vector(rng)),
                              BlochVector::normalized(random_unit_vector(rng)),
                              BlochVector::normalized(random_unit_vector(rng)),
                              BlochVector::normalized(random_unit_vector(rng))));
  }
  const int k = witness_rank(kind);
  const Columns u = random_orthogonal(rng) * first_columns(k);
  const Columns v = random_orthogonal(rng) * first_columns(k);
  WitnessSpec spec = witness_from_directions(kind, u, v);
  auto& g = std::get<FrameGeometry>(spec.geometry);
  if (kind == WitnessKind::W1) {
    for (auto& f : g.second) f = spin_frame(f, rng);
  } else if (kind == WitnessKind::W3) {
    for (auto& f : g.first) f = spin_frame(f, rng);
    for (auto& f : g.second) f = spin_frame(f, rng);
  }
  return make_witness(kind, std::move(g));
}

// --- evaluation ---------------------------------------------------------------

namespace {

IdentityRoute primary_route(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::W0: return IdentityRoute::ChshProposition;
    case WitnessKind::W1: return IdentityRoute::SchemeS1;
    case WitnessKind::W2: return IdentityRoute::AgreementDoublet;
    case WitnessKind::W3: return IdentityRoute::SchemeS2;
    case WitnessKind::W4: return IdentityRoute::AgreementTriplet;
  }
  return IdentityRoute::ChshProposition;
}

double route_residual(IdentityRoute route, const WitnessSpec& spec,
                      const DensityMatrix& rho, double value, double* sum) {
  const AffineCoefficients c = identity_coefficients(route);
  const double s = rho.expectation(route_operator(route, spec, nullptr));
  if (sum != nullptr) *sum = s;
  return std::abs(s - (c.a + c.b * value));
}

}  // namespace

WitnessReport evaluate(const WitnessSpec& spec, const DensityMatrix& rho,
                       EvaluateOptions options) {
  if (const auto* obs = std::get_if<ChshObservables>(&spec.geometry)) {
    if (rho.dims() != std::vector<int>{obs->a1.dim(), obs->b1.dim()}) {
      throw Error(ErrorCode::DimensionMismatch,
                  "W0 observables do not match the state's subsystems");
    }
  } else if (!rho.is_two_qubit()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(to_string(spec.kind)) + " is defined for two qubits");
  }

  WitnessReport report{spec.kind,      0.0,   spec.bound,
                       spec.direction, false, spec.geometry,
                       std::nullopt,   std::nullopt};
  report.value = rho.expectation(correlation_operator(spec));
  report.detected = violates(spec.kind, report.value);

  if (options.cross_check) {
    double sum = 0.0;
    double residual =
        route_residual(primary_route(spec.kind), spec, rho, report.value, &sum);
    if (spec.kind == WitnessKind::W4) {
      residual = std::max(residual,
                          route_residual(IdentityRoute::SchemeS3, spec, rho,
                                         report.value, nullptr));
    }
    report.scheme_sum = sum;
    report.scheme_residual = residual;
    if (residual > kRouteTol) {
      throw std::logic_error(
          std::string(to_string(spec.kind)) +
          ": pseudo-probability route disagrees with correlation value by " +
          std::to_string(residual));
    }
  }
  return report;
}

TwoTermChsh chsh_two_term(const DensityMatrix& rho, const BlochVector& a1,
                          const BlochVector& a2, const BlochVector& b1,
                          const BlochVector& b2) {
  if (std::abs(a1.dot(a2)) > kGeometryTol ||
      std::abs(b1.dot(b2)) > kGeometryTol) {
    bad_geometry(WitnessKind::W0,
                 "two-term form needs a1 _|_ a2 and b1 _|_ b2");
  }
  if (!rho.is_two_qubit()) {
    throw Error(ErrorCode::DimensionMismatch, "two-term form is for qubits");
  }
  const Vector3 b = (b1.vector() + b2.vector()) / std::sqrt(2.0);
  const Vector3 bp = (b1.vector() - b2.vector()) / std::sqrt(2.0);
  const ComplexMatrix op = kron(pauli_dot(a1.vector()), pauli_dot(b)) +
                           kron(pauli_dot(a2.vector()), pauli_dot(bp));
  const double value = rho.expectation(op);
  const double bound = std::sqrt(2.0);
  return {value, bound, std::abs(value) > bound + kDetectionTol};
}

std::vector<WitnessSpec> sign_permutation_orbit(WitnessKind kind) {
  const int k = witness_rank(kind);
  if (k == 0) bad_geometry(kind, "no sign/permutation orbit for W0");
  std::vector<WitnessSpec> out;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Columns u(3, k);
      Columns v(3, k);
      for (int i = 0; i < k; ++i) {
        const Vector3 e = Matrix3::Identity().col(perm[static_cast<std::size_t>(i)]);
        u.col(i) = e;
        v.col(i) = ((signs >> i) & 1) ? Vector3(-e) : e;
      }
      out.push_back(witness_from_directions(kind, u, v));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace pseudoprob
