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

#include "pseudoprob/pseudoprojection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace pseudoprob {

namespace {

void require_projectors(std::span<const ComplexMatrix> projectors) {
  if (projectors.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "no projectors given");
  }
  const auto dim = projectors.front().rows();
  for (const ComplexMatrix& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "projectors act on different dimensions");
    }
    if (!p.allFinite() || !is_projector(p)) {
      throw Error(ErrorCode::NotProjector,
                  "input is not a Hermitian idempotent");
    }
  }
}

ComplexMatrix ordered_product(std::span<const ComplexMatrix> projectors,
                              const Ordering& order) {
  ComplexMatrix out = projectors[static_cast<std::size_t>(order.front())];
  for (std::size_t i = 1; i < order.size(); ++i) {
    out = out * projectors[static_cast<std::size_t>(order[i])];
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

Ordering canonical(Ordering order) {
  Ordering rev(order.rbegin(), order.rend());
  return std::min(order, rev);
}

}  // namespace

ComplexMatrix unit_pseudo_projection(
    std::span<const ComplexMatrix> projectors) {
  require_projectors(projectors);
  Ordering order(projectors.size());
  std::iota(order.begin(), order.end(), 0);
  // the reversed product is the adjoint of the forward one
  return hermitian_part(ordered_product(projectors, order));
}

ComplexMatrix symmetric_pseudo_projection(
    std::span<const ComplexMatrix> projectors) {
  require_projectors(projectors);
  const int n = static_cast<int>(projectors.size());
  if (n > kMaxSymmetrized) {
    throw Error(ErrorCode::TooManyObservables,
                std::to_string(n) + " projectors; at most " +
                    std::to_string(kMaxSymmetrized) + " are symmetrized");
  }
  const auto orderings = canonical_orderings(n);
  ComplexMatrix sum = ComplexMatrix::Zero(projectors.front().rows(),
                                          projectors.front().cols());
  for (const Ordering& o : orderings) sum += ordered_product(projectors, o);
  return hermitian_part(sum) / double(orderings.size());
}

std::vector<Ordering> canonical_orderings(int n) {
  if (n < 1 || n > kMaxSymmetrized) {
    throw Error(ErrorCode::TooManyObservables,
                "orderings are enumerated for 1 <= N <= " +
                    std::to_string(kMaxSymmetrized));
  }
  Ordering perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Ordering> out;
  do {
    if (canonical(perm) == perm) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

PseudoProjection convex_pseudo_projection(
    std::span<const ComplexMatrix> projectors,
    std::span<const WeightedOrdering> weights) {
  require_projectors(projectors);
  const int n = static_cast<int>(projectors.size());
  if (n > kMaxSymmetrized) {
    throw Error(ErrorCode::TooManyObservables,
                "convex span enumerated for N <= 4");
  }
  if (weights.empty()) throw Error(ErrorCode::BadWeights, "no weights");

  double total = 0.0;
  std::set<Ordering> seen;
  PseudoProjection out;
  out.op = ComplexMatrix::Zero(projectors.front().rows(),
                               projectors.front().cols());
  for (const WeightedOrdering& w : weights) {
    if (!(w.weight >= 0.0 && w.weight <= 1.0)) {
      throw Error(ErrorCode::BadWeights, "weight outside [0, 1]");
    }
    Ordering sorted = w.ordering;
    std::sort(sorted.begin(), sorted.end());
    Ordering expected(static_cast<std::size_t>(n));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) {
      throw Error(ErrorCode::BadWeights, "ordering is not a permutation");
    }
    if (!seen.insert(canonical(w.ordering)).second) {
      throw Error(ErrorCode::BadWeights,
                  "orderings repeat (up to reversal)");
    }
    total += w.weight;
    if (w.weight > 0.0) {
      out.op += w.weight *
                hermitian_part(ordered_product(projectors, w.ordering));
    }
    out.weights.push_back({canonical(w.ordering), w.weight});
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadWeights,
                "weights sum to " + std::to_string(total));
  }
  return out;
}

double min_eigenvalue(const PseudoProjection& pp) {
  return min_eigenvalue(pp.op);
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> dims,
                    int index) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (static_cast<int>(s) == index) {
      if (op.rows() != dims[s]) {
        throw Error(ErrorCode::DimensionMismatch,
                    "operator does not match subsystem dimension");
      }
      out = kron(out, op);
    } else {
      out = kron(out, ComplexMatrix::Identity(dims[s], dims[s]));
    }
  }
  return out;
}

void Scheme::index_labels() {
  labels_.clear();
  dim_ = 1;
  for (const Subsystem& s : subsystems_) {
    dim_ *= s.dim;
    for (const auto& o : s.observables) labels_.push_back(o.label());
  }
}

std::string Scheme::key(const OutcomeTuple& outcome) const {
  if (static_cast<int>(outcome.size()) != observable_count()) {
    throw Error(ErrorCode::DimensionMismatch, "outcome tuple length");
  }
  std::string out;
  std::size_t pos = 0;
  for (std::size_t s = 0; s < subsystems_.size(); ++s) {
    if (s > 0) out += ';';
    for (std::size_t i = 0; i < subsystems_[s].observables.size(); ++i) {
      out += symbol(outcome[pos++]);
    }
  }
  return out;
}

const PseudoProjection* Scheme::find(std::string_view k) const {
  for (const PseudoProjection& e : entries_) {
    if (key(e.outcome) == k) return &e;
  }
  return nullptr;
}

ComplexMatrix Scheme::sum() const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : entries_) out += e.op;
  return out;
}

std::vector<double> Scheme::pseudo_probabilities(
    const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "state dimension does not match scheme");
  }
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(trace_product(rho, e.op));
  return out;
}

namespace {

OutcomeTuple outcome_from_index(std::size_t index, int n) {
  OutcomeTuple out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool minus = (index >> (n - 1 - i)) & 1u;
    out[static_cast<std::size_t>(i)] = minus ? Outcome::Minus : Outcome::Plus;
  }
  return out;
}

}  // namespace

Scheme build_scheme(std::vector<Subsystem> subsystems) {
  if (subsystems.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "scheme needs a subsystem");
  }
  for (const Subsystem& s : subsystems) {
    if (s.dim < 1) {
      throw Error(ErrorCode::DimensionMismatch, "subsystem dim must be >= 1");
    }
    if (static_cast<int>(s.observables.size()) > kMaxSymmetrized) {
      throw Error(ErrorCode::TooManyObservables,
                  "at most 4 observables per subsystem");
    }
    for (const auto& o : s.observables) {
      if (o.dim() != s.dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "observable '" + o.label() + "' has dim " +
                        std::to_string(o.dim()) + ", subsystem has " +
                        std::to_string(s.dim));
      }
    }
  }

  Scheme scheme;
  scheme.subsystems_ = std::move(subsystems);
  scheme.index_labels();

  // per-subsystem symmetric pseudo projections, indexed by local outcome
  std::vector<std::vector<ComplexMatrix>> local;
  for (const Subsystem& s : scheme.subsystems_) {
    const int k = static_cast<int>(s.observables.size());
    std::vector<ComplexMatrix> table;
    for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
      if (k == 0) {
        table.push_back(ComplexMatrix::Identity(s.dim, s.dim));
        continue;
      }
      const OutcomeTuple o = outcome_from_index(idx, k);
      std::vector<ComplexMatrix> projs;
      for (int i = 0; i < k; ++i) {
        projs.push_back(projector(s.observables[static_cast<std::size_t>(i)],
                                  o[static_cast<std::size_t>(i)]));
      }
      table.push_back(symmetric_pseudo_projection(projs));
    }
    local.push_back(std::move(table));
  }

  const int n = scheme.observable_count();
  for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
    PseudoProjection entry;
    entry.outcome = outcome_from_index(idx, n);
    entry.labels = scheme.labels_;
    entry.op = ComplexMatrix::Identity(1, 1);
    int shift = n;
    for (std::size_t s = 0; s < scheme.subsystems_.size(); ++s) {
      const int k = static_cast<int>(scheme.subsystems_[s].observables.size());
      shift -= k;
      const std::size_t local_idx = (idx >> shift) & ((std::size_t{1} << k) - 1);
      entry.op = kron(entry.op, local[s][local_idx]);
    }
    scheme.entries_.push_back(std::move(entry));
  }
  return scheme;
}

Scheme marginalize(const Scheme& scheme, std::string_view label) {
  const auto& labels = scheme.labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorCode::UnknownLabel, std::string(label));
  }
  const int n = scheme.observable_count();
  const int drop = static_cast<int>(it - labels.begin());

  Scheme out;
  out.subsystems_ = scheme.subsystems_;
  int pos = 0;
  for (auto& s : out.subsystems_) {
    const int k = static_cast<int>(s.observables.size());
    if (drop >= pos && drop < pos + k) {
      s.observables.erase(s.observables.begin() + (drop - pos));
      break;
    }
    pos += k;
  }
  out.index_labels();

  // bit for observable i sits at position n-1-i of the parent index
  const int bit = n - 1 - drop;
  for (std::size_t child = 0; child < (std::size_t{1} << (n - 1)); ++child) {
    const std::size_t high = (child >> bit) << (bit + 1);
    const std::size_t low = child & ((std::size_t{1} << bit) - 1);
    const std::size_t plus = high | low;
    const std::size_t minus = plus | (std::size_t{1} << bit);
    PseudoProjection entry;
    entry.op = scheme.entries()[plus].op + scheme.entries()[minus].op;
    entry.labels = out.labels_;
    entry.outcome = scheme.entries()[plus].outcome;
    entry.outcome.erase(entry.outcome.begin() + drop);
    out.entries_.push_back(std::move(entry));
  }
  return out;
}

}  // namespace pseudoprob
