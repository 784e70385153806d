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

#include "pseudoprob/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pseudoprob/parallel.hpp"

namespace pseudoprob {

namespace {

using Row = std::array<double, 4>;

/// c + s_i t_i + s_j t_j over pairs i < j and all sign patterns.
std::vector<Row> pair_faces(double c) {
  std::vector<Row> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          Row r{c, 0.0, 0.0, 0.0};
          r[static_cast<std::size_t>(i + 1)] = si;
          r[static_cast<std::size_t>(j + 1)] = sj;
          out.push_back(r);
        }
      }
    }
  }
  return out;
}

/// c + s . t over sign patterns with an even number of minus signs.
std::vector<Row> even_faces(double c) {
  return {{c, 1, 1, 1}, {c, 1, -1, -1}, {c, -1, 1, -1}, {c, -1, -1, 1}};
}

std::vector<PolytopeSpec> build_polytopes() {
  return {
      {Polytope::PhysicalTetrahedron,
       {{1, -1, -1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}}},
      {Polytope::W4Octahedron, even_faces(1.0)},
      {Polytope::W3Octahedron, even_faces(std::sqrt(1.5))},
      {Polytope::W1Dodecahedron, pair_faces(2.0 / std::sqrt(3.0))},
      {Polytope::W2Dodecahedron, pair_faces(1.0)},
  };
}

std::size_t witness_index(WitnessKind kind) {
  return static_cast<std::size_t>(kind);
}

void require_positive_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::BadConfig, "grid step must be positive");
  }
}

std::size_t grid_count(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

std::string_view to_string(Polytope polytope) {
  switch (polytope) {
    case Polytope::PhysicalTetrahedron: return "physical_tetrahedron";
    case Polytope::W4Octahedron: return "W4_octahedron";
    case Polytope::W3Octahedron: return "W3_octahedron";
    case Polytope::W1Dodecahedron: return "W1_dodecahedron";
    case Polytope::W2Dodecahedron: return "W2_dodecahedron";
  }
  return "?";
}

double PolytopeSpec::slack(std::size_t index, const CorrelationPoint& t) const {
  const Row& r = inequalities.at(index);
  return r[0] + r[1] * t.t1 + r[2] * t.t2 + r[3] * t.t3;
}

double PolytopeSpec::min_slack(const CorrelationPoint& t) const {
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    out = std::min(out, slack(i, t));
  }
  return out;
}

const PolytopeSpec& polytope_spec(Polytope polytope) {
  static const std::vector<PolytopeSpec> specs = build_polytopes();
  return specs[static_cast<std::size_t>(polytope)];
}

Polytope undetected_polytope(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::W1: return Polytope::W1Dodecahedron;
    case WitnessKind::W2: return Polytope::W2Dodecahedron;
    case WitnessKind::W3: return Polytope::W3Octahedron;
    case WitnessKind::W4: return Polytope::W4Octahedron;
    case WitnessKind::W0: break;
  }
  throw Error(ErrorCode::UnsupportedShape, "W0 has no correlation polytope");
}

bool RegionClassification::detects(WitnessKind kind) const {
  return std::find(detected_by.begin(), detected_by.end(), kind) !=
         detected_by.end();
}

RegionClassification classify(const CorrelationPoint& t) {
  RegionClassification out;
  out.point = t;
  out.physical = polytope_spec(Polytope::PhysicalTetrahedron).contains(t);
  if (!out.physical) return out;
  for (WitnessKind kind : kRegionWitnesses) {
    if (!polytope_spec(undetected_polytope(kind)).contains(t)) {
      out.detected_by.push_back(kind);
    }
  }
  return out;
}

std::vector<RegionClassification> slice_scan(double t3, double step) {
  require_positive_step(step);
  const std::size_t n = grid_count(-1.0, 1.0, step);
  std::vector<RegionClassification> out(n * n);
  parallel_for(n, [&](std::size_t i) {
    const double t1 = -1.0 + static_cast<double>(i) * step;
    for (std::size_t j = 0; j < n; ++j) {
      const double t2 = -1.0 + static_cast<double>(j) * step;
      out[i * n + j] = classify({t1, t2, t3});
    }
  });
  return out;
}

SliceSummary summarize(const std::vector<RegionClassification>& scan) {
  SliceSummary s;
  for (const RegionClassification& c : scan) {
    if (!c.physical) {
      ++s.unphysical;
      continue;
    }
    const bool w2 = c.detects(WitnessKind::W2);
    const bool w3 = c.detects(WitnessKind::W3);
    if (w2 && w3) {
      ++s.both;
    } else if (w2) {
      ++s.only_w2;
    } else if (w3) {
      ++s.only_w3;
    } else {
      ++s.none;
    }
  }
  return s;
}

std::vector<WernerSweepRow> werner_sweep(double beta, double alpha_min,
                                         double alpha_max, double step,
                                         const GeometrySearchConfig& config) {
  require_positive_step(step);
  if (!(alpha_min <= alpha_max)) {
    throw Error(ErrorCode::BadConfig, "alpha_min must not exceed alpha_max");
  }
  config.validate();
  const std::size_t n = grid_count(alpha_min, alpha_max, step);
  std::vector<WernerSweepRow> rows(n);
  parallel_for(n, [&](std::size_t i) {
    WernerSweepRow& row = rows[i];
    row.alpha = alpha_min + static_cast<double>(i) * step;
    row.beta = beta;
    row.values.fill(std::numeric_limits<double>::quiet_NaN());
    const auto ev = werner_local_eigenvalues(row.alpha, row.beta);
    row.physical = *std::min_element(ev.begin(), ev.end()) >= -kPsdTol;
    if (!row.physical) return;
    const DensityMatrix rho = werner_local(row.alpha, row.beta);
    row.ppt_entangled = ppt_is_entangled(rho);
    for (WitnessKind kind : kAllWitnesses) {
      const double v = optimize_geometry(kind, rho, config).value;
      row.values[witness_index(kind)] = v;
      row.detected[witness_index(kind)] = violates(kind, v);
    }
  });
  return rows;
}

std::optional<double> sweep_boundary(const std::vector<WernerSweepRow>& rows,
                                     WitnessKind kind) {
  std::optional<double> out;
  for (const WernerSweepRow& r : rows) {
    if (r.detected[witness_index(kind)] && (!out || r.alpha > *out)) {
      out = r.alpha;
    }
  }
  return out;
}

std::optional<double> sweep_ppt_boundary(
    const std::vector<WernerSweepRow>& rows) {
  std::optional<double> out;
  for (const WernerSweepRow& r : rows) {
    if (r.ppt_entangled && (!out || r.alpha > *out)) out = r.alpha;
  }
  return out;
}

std::map<WitnessKind, double> werner_thresholds(
    double beta, const GeometrySearchConfig& config, double tolerance) {
  auto physical = [beta](double alpha) {
    const auto ev = werner_local_eigenvalues(alpha, beta);
    return *std::min_element(ev.begin(), ev.end()) >= -kPsdTol;
  };
  auto detected = [&](WitnessKind kind, double alpha) {
    const DensityMatrix rho = werner_local(alpha, beta);
    return violates(kind, optimize_geometry(kind, rho, config).value);
  };

  std::map<WitnessKind, double> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!physical(0.0)) {
    for (WitnessKind kind : kAllWitnesses) out[kind] = nan;
    return out;
  }
  // smallest physical alpha in [-1, 0]
  double lo = -1.0;
  if (!physical(lo)) {
    double hi = 0.0;
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (physical(mid) ? hi : lo) = mid;
    }
    lo = hi;
  }
  for (WitnessKind kind : kAllWitnesses) {
    if (!detected(kind, lo)) {
      out[kind] = nan;
      continue;
    }
    double a = lo;   // detected
    double b = 0.0;  // not detected
    while (b - a > tolerance) {
      const double mid = 0.5 * (a + b);
      (detected(kind, mid) ? a : b) = mid;
    }
    out[kind] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace pseudoprob
