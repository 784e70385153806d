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
#include <vector>

#include "pseudoprob/states.hpp"
#include "pseudoprob/witnesses.hpp"

namespace pseudoprob {

struct GeometrySearchConfig {
  int restarts = 16;
  /// Compass-search step sizes in radians, strictly decreasing.
  std::vector<double> steps = {0.3, 0.1, 0.03, 0.01};
  int max_iterations = 200;
  std::uint64_t seed = 0;

  /// Throws BadConfig.
  void validate() const;
};

struct GeometryResult {
  WitnessSpec spec;
  double value;
  /// Index of the restart that produced the result.
  int restart;
};

/// |value| for W0, -value for W1..W4: larger means more violating.
double violation_score(WitnessKind kind, double value);

/// Most-violating geometry found by compass search over per-side orthogonal
/// transformations (reflections included) followed by alternating exact
/// best responses. W0 accepts any local dimensions; W1..W4 need two qubits.
GeometryResult optimize_geometry(WitnessKind kind, const DensityMatrix& rho,
                                 const GeometrySearchConfig& config = {});

/// Exhaustive scan over a grid of angles with spacing `resolution_deg`;
/// returns the most-violating value in the witness's own sign convention
/// (|value| for W0). Grids at multiples of a coarser resolution contain the
/// coarser grid. Throws ResolutionTooFine below 1 degree or when the grid
/// exceeds `max_evaluations`; UnsupportedShape for non-qubit states.
double brute_force_geometry(WitnessKind kind, const DensityMatrix& rho,
                            double resolution_deg,
                            double max_evaluations = 5e7);

/// Rz(a) Ry(b) Rz(c).
Matrix3 euler_rotation(double a, double b, double c);

}  // namespace pseudoprob
