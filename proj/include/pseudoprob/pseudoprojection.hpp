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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pseudoprob/linalg.hpp"
#include "pseudoprob/observables.hpp"

namespace pseudoprob {

/// Largest number of projectors symmetrized in one call (24 orderings).
inline constexpr int kMaxSymmetrized = 4;

using Ordering = std::vector<int>;
using OutcomeTuple = std::vector<Outcome>;

struct WeightedOrdering {
  Ordering ordering;
  double weight = 0.0;
};

/// Hermitian representative of a joint outcome. An empty `weights` list
/// means the fully symmetric combination.
struct PseudoProjection {
  ComplexMatrix op;
  std::vector<std::string> labels;
  OutcomeTuple outcome;
  std::vector<WeightedOrdering> weights;
};

/// (P1 P2 ... PN + PN ... P2 P1) / 2, in the order given.
ComplexMatrix unit_pseudo_projection(std::span<const ComplexMatrix> projectors);

/// Average of the ordered products over all N! orderings, N <= 4.
ComplexMatrix symmetric_pseudo_projection(
    std::span<const ComplexMatrix> projectors);

/// The N!/2 orderings that represent each {ordering, reversed} pair: the
/// lexicographically smaller member of the pair.
std::vector<Ordering> canonical_orderings(int n);

/// Weighted sum of unit pseudo projections. Weights must lie in [0, 1] and
/// sum to 1; orderings must be distinct up to reversal.
PseudoProjection convex_pseudo_projection(
    std::span<const ComplexMatrix> projectors,
    std::span<const WeightedOrdering> weights);

double min_eigenvalue(const PseudoProjection& pp);

/// Observables acting on one tensor factor. `dim` is explicit so that a
/// subsystem may carry no observables.
struct Subsystem {
  int dim = 2;
  std::vector<DichotomicObservable> observables;
};

/// The table of pseudo projections over every outcome tuple of a fixed
/// observable set.
class Scheme {
 public:
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const std::vector<PseudoProjection>& entries() const { return entries_; }
  int dim() const { return dim_; }
  int observable_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Key such as "+-;+": one symbol per observable, subsystems split by ';'.
  std::string key(const OutcomeTuple& outcome) const;
  const PseudoProjection* find(std::string_view key) const;

  /// Sum over the whole table.
  ComplexMatrix sum() const;
  /// Tr(rho * entry) for each entry, in table order.
  std::vector<double> pseudo_probabilities(const ComplexMatrix& rho) const;

 private:
  friend Scheme build_scheme(std::vector<Subsystem>);
  friend Scheme marginalize(const Scheme&, std::string_view);
  Scheme() = default;
  void index_labels();

  std::vector<Subsystem> subsystems_;
  std::vector<PseudoProjection> entries_;
  std::vector<std::string> labels_;
  int dim_ = 1;
};

/// Entry for each outcome tuple = tensor product over subsystems of the
/// symmetric pseudo projection of that subsystem's outcome projectors.
/// Entries are ordered with the first observable most significant and '+'
/// before '-'.
Scheme build_scheme(std::vector<Subsystem> subsystems);

/// Sums out the first observable carrying `label`.
Scheme marginalize(const Scheme& scheme, std::string_view label);

/// Embeds an operator on subsystem `index` into the full space.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> dims,
                    int index);

}  // namespace pseudoprob
