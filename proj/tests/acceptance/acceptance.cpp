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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "pseudoprob/optimizer.hpp"
#include "pseudoprob/pseudoprojection.hpp"
#include "pseudoprob/regions.hpp"
#include "pseudoprob/states.hpp"
#include "pseudoprob/witnesses.hpp"

using namespace pseudoprob;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Verdict()>& criterion) {
  const auto start = std::chrono::steady_clock::now();
  Verdict o{false, ""};
  try {
    o = criterion();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Verdict operator_identities() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (IdentityRoute route : kAllRoutes) {
    Rng rng = make_rng(2026, static_cast<std::uint64_t>(route));
    for (int trial = 0; trial < 50; ++trial) {
      const WitnessSpec spec = random_witness(route_kind(route), rng);
      worst = std::max(worst, identity_residual(route, spec, &rng));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst < 1e-10 && secs < 5.0,
          fmt("6 routes x 50 geometries, max residual %.3g, %.2fs", worst, secs)};
}

Verdict scheme_laws() {
  double sum_residual = 0.0;
  double prob_residual = 0.0;
  double marginal_residual = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = make_rng(77, trial);
    std::vector<Subsystem> subsystems;
    std::vector<int> dims;
    for (int s = 0; s < 2; ++s) {
      const int dim = std::uniform_int_distribution<int>(2, 4)(rng);
      const int count = std::uniform_int_distribution<int>(1, 3)(rng);
      Subsystem sub{dim, {}};
      for (int k = 0; k < count; ++k) {
        const int rank = std::uniform_int_distribution<int>(1, dim - 1)(rng);
        const std::string label = std::string(1, static_cast<char>('A' + s)) + std::to_string(k + 1);
        sub.observables.push_back(random_dichotomic(dim, rank, rng(), label));
      }
      dims.push_back(dim);
      subsystems.push_back(std::move(sub));
    }
    const Scheme scheme = build_scheme(subsystems);
    const int dim = scheme.dim();
    sum_residual = std::max(sum_residual, oracle::max_abs_diff(scheme.sum(), ComplexMatrix::Identity(dim, dim)));

    const DensityMatrix rho = random_density(dims, 1000 + trial);
    double total = 0.0;
    for (double p : scheme.pseudo_probabilities(rho.matrix())) total += p;
    prob_residual = std::max(prob_residual, std::abs(total - 1.0));

    for (std::size_t s = 0; s < subsystems.size(); ++s) {
      for (std::size_t k = 0; k < subsystems[s].observables.size(); ++k) {
        std::vector<Subsystem> kept = subsystems;
        kept[s].observables.erase(kept[s].observables.begin() + static_cast<long>(k));
        const Scheme direct = build_scheme(kept);
        const Scheme summed = marginalize(scheme, subsystems[s].observables[k].label());
        if (summed.entries().size() != direct.entries().size()) {
          return {false, "marginal table size mismatch"};
        }
        for (std::size_t i = 0; i < direct.entries().size(); ++i) {
          marginal_residual = std::max(
              marginal_residual, oracle::max_abs_diff(summed.entries()[i].op, direct.entries()[i].op));
        }
      }
    }
  }
  return {sum_residual < 1e-10 && prob_residual < 1e-10 && marginal_residual < 1e-12,
          fmt("100 cases, identity residual %.3g, marginal residual %.3g", sum_residual,
              marginal_residual)};
}

Verdict negativity() {
  int negative = 0;
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector3 a = random_unit_vector(rng);
    Vector3 b = random_unit_vector(rng);
    while (a.cross(b).norm() < 1e-3) b = random_unit_vector(rng);
    const int sa = (rng() & 1) ? 1 : -1;
    const int sb = (rng() & 1) ? 1 : -1;
    const std::vector<ComplexMatrix> ps{oracle::qubit_projector(a, sa), oracle::qubit_projector(b, sb)};
    if (min_eigenvalue(symmetric_pseudo_projection(ps)) < 0.0) ++negative;
  }
  const std::vector<ComplexMatrix> xz{oracle::qubit_projector(Vector3::UnitX(), 1),
                                      oracle::qubit_projector(Vector3::UnitZ(), 1)};
  const double xz_min = min_eigenvalue(symmetric_pseudo_projection(xz));
  const double err = std::abs(xz_min - (1.0 - std::sqrt(2.0)) / 4.0);
  return {negative == 100 && err < 1e-12,
          fmt("%.0f/100 negative, x/z min eigenvalue error %.3g", negative, err)};
}

Verdict chsh() {
  const auto singlet = DensityMatrix::two_qubit(oracle::singlet());
  const double singlet_value = std::abs(optimize_geometry(WitnessKind::W0, singlet).value);
  const double singlet_err = std::abs(singlet_value - 2.0 * std::sqrt(2.0));

  double oracle_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density({2, 2}, 500 + trial);
    const double found = std::abs(optimize_geometry(WitnessKind::W0, rho).value);
    oracle_err = std::max(oracle_err, std::abs(found - oracle::horodecki(rho.matrix())));
  }

  double control = 0.0;
  Rng rng = make_rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho =
        trial == 0 ? singlet : random_density({2, 2}, 5000 + static_cast<std::uint64_t>(trial));
    const auto a1 = BlochVector::make(random_unit_vector(rng));
    const auto a2 = BlochVector::make(random_unit_vector(rng));
    const auto b = BlochVector::make(random_unit_vector(rng));
    const WitnessSpec spec = make_witness(WitnessKind::W0, chsh_from_bloch(a1, a2, b, b));
    control = std::max(control, std::abs(evaluate(spec, rho).value));
  }
  return {singlet_err < 1e-6 && oracle_err < 1e-6 && control <= 2.0 + 1e-12,
          fmt("singlet error %.3g, oracle error %.3g", singlet_err, oracle_err) +
              fmt(", B1 = B2 max %.6f", control)};
}

Verdict werner_boundaries() {
  const double step = 1e-3;
  const auto rows = werner_sweep(0.0, -1.0, 0.0, step);
  const std::array<double, 5> expected = {-1 / std::sqrt(2.0), -1 / std::sqrt(3.0), -0.5,
                                          -1 / std::sqrt(6.0), -1.0 / 3};
  double worst = 0.0;
  bool all_found = true;
  for (std::size_t i = 0; i < kAllWitnesses.size(); ++i) {
    const auto b = sweep_boundary(rows, kAllWitnesses[i]);
    if (!b) {
      all_found = false;
      continue;
    }
    worst = std::max(worst, std::abs(*b - expected[i]));
  }
  const auto w4 = sweep_boundary(rows, WitnessKind::W4);
  const auto ppt = sweep_ppt_boundary(rows);
  const double ppt_gap = (w4 && ppt) ? std::abs(*w4 - *ppt) : INFINITY;
  return {all_found && worst <= 2e-3 && ppt_gap <= step + 1e-12,
          fmt("max boundary error %.3g, PPT vs W4 gap %.3g", worst, ppt_gap)};
}

Verdict polytope_relations() {
  Rng rng = make_rng(61);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  int points = 0;
  int violations = 0;
  while (points < 1000) {
    const CorrelationPoint t{cube(rng), cube(rng), cube(rng)};
    const auto c = classify(t);
    if (!c.physical) continue;
    ++points;
    if (c.detects(WitnessKind::W3) && !c.detects(WitnessKind::W4)) ++violations;
    if (c.detects(WitnessKind::W1) && !c.detects(WitnessKind::W2)) ++violations;
  }
  const SliceSummary s = summarize(slice_scan(0.5, 0.01));
  return {violations == 0 && s.only_w2 > 0 && s.only_w3 > 0,
          fmt("%.0f containment violations over 1000 points", violations) +
              fmt(", t3 = 0.5 only-W2 %.0f, only-W3 %.0f", static_cast<double>(s.only_w2),
                  static_cast<double>(s.only_w3))};
}

Verdict separable_no_detection() {
  std::vector<WitnessSpec> orbit;
  for (WitnessKind k : kRegionWitnesses) {
    for (auto& spec : sign_permutation_orbit(k)) orbit.push_back(std::move(spec));
  }
  int detections = 0;
  double worst_chsh = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const DensityMatrix rho = random_separable(1 + trial % 4, 9000 + trial);
    for (const auto& spec : orbit) {
      if (evaluate(spec, rho, {.cross_check = false}).detected) ++detections;
    }
    worst_chsh = std::max({worst_chsh, chsh_max(rho), oracle::horodecki(rho.matrix())});
  }
  return {detections == 0 && worst_chsh <= 2.0 + 1e-9,
          fmt("%.0f detections over 500 states x %.0f geometries", detections,
              static_cast<double>(orbit.size())) +
              fmt(", max CHSH %.6f", worst_chsh)};
}

}  // namespace

int main() {
  report("operator identities", operator_identities);
  report("scheme laws", scheme_laws);
  report("negativity", negativity);
  report("CHSH optimum and control", chsh);
  report("Werner thresholds", werner_boundaries);
  report("polytope strength relations", polytope_relations);
  report("separable no-detection", separable_no_detection);
  return failures == 0 ? 0 : 1;
}
