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
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudoprob/optimizer.hpp"
#include "pseudoprob/states.hpp"
#include "pseudoprob/witnesses.hpp"

namespace pseudoprob {

/// Slack tolerance: a point is inside when every slack is >= -kRegionTol and
/// detected only when some slack is < -kRegionTol.
inline constexpr double kRegionTol = 1e-12;

inline constexpr std::array<WitnessKind, 4> kRegionWitnesses = {
    WitnessKind::W1, WitnessKind::W2, WitnessKind::W3, WitnessKind::W4};

enum class Polytope {
  PhysicalTetrahedron,
  W4Octahedron,
  W3Octahedron,
  W1Dodecahedron,
  W2Dodecahedron,
};

inline constexpr std::array<Polytope, 5> kAllPolytopes = {
    Polytope::PhysicalTetrahedron, Polytope::W4Octahedron,
    Polytope::W3Octahedron, Polytope::W1Dodecahedron,
    Polytope::W2Dodecahedron};

std::string_view to_string(Polytope polytope);

/// Linear inequalities c0 + c1 t1 + c2 t2 + c3 t3 >= 0.
struct PolytopeSpec {
  Polytope id;
  std::vector<std::array<double, 4>> inequalities;

  double slack(std::size_t index, const CorrelationPoint& t) const;
  double min_slack(const CorrelationPoint& t) const;
  bool contains(const CorrelationPoint& t) const {
    return min_slack(t) >= -kRegionTol;
  }
};

/// Inequality counts 4, 4, 4, 12, 12 in kAllPolytopes order.
const PolytopeSpec& polytope_spec(Polytope polytope);

/// Undetected region of W1..W4 (UnsupportedShape for W0).
Polytope undetected_polytope(WitnessKind kind);

struct RegionClassification {
  CorrelationPoint point;
  bool physical = false;
  std::vector<WitnessKind> detected_by;

  bool detects(WitnessKind kind) const;
};

/// Bell-diagonal point classification. Unphysical points get an empty
/// detected_by.
RegionClassification classify(const CorrelationPoint& t);

/// (t1, t2) grid at fixed t3 with t = -1 + i * step, t1 major. Unphysical
/// points are kept and flagged. Throws BadConfig unless step > 0.
std::vector<RegionClassification> slice_scan(double t3, double step);

struct SliceSummary {
  std::size_t only_w2 = 0;
  std::size_t only_w3 = 0;
  std::size_t both = 0;
  std::size_t none = 0;
  std::size_t unphysical = 0;
};

/// Counts by W2/W3 membership; `none` counts physical points detected by
/// neither.
SliceSummary summarize(const std::vector<RegionClassification>& scan);

struct WernerSweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  bool physical = false;
  bool ppt_entangled = false;
  /// Optimized witness values in kAllWitnesses order; NaN when unphysical.
  std::array<double, 5> values{};
  std::array<bool, 5> detected{};
};

/// werner_local(alpha, beta) for alpha = alpha_min + i * step up to
/// alpha_max, each witness at its optimized geometry. Throws BadConfig
/// unless step > 0 and alpha_min <= alpha_max.
std::vector<WernerSweepRow> werner_sweep(
    double beta, double alpha_min, double alpha_max, double step,
    const GeometrySearchConfig& config = {});

/// Largest detected alpha in a sweep, if any.
std::optional<double> sweep_boundary(const std::vector<WernerSweepRow>& rows,
                                     WitnessKind kind);
/// Largest PPT-entangled alpha in a sweep, if any.
std::optional<double> sweep_ppt_boundary(
    const std::vector<WernerSweepRow>& rows);

/// Detection threshold in alpha for werner_local(alpha, beta), alpha < 0,
/// by bisection on the optimized witness value. NaN when no physical
/// alpha < 0 is detected.
std::map<WitnessKind, double> werner_thresholds(
    double beta = 0.0, const GeometrySearchConfig& config = {},
    double tolerance = 1e-9);

}  // namespace pseudoprob
