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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pseudoprob/observables.hpp"
#include "pseudoprob/pseudoprojection.hpp"

namespace pseudoprob {

class Proposition;

struct Literal {
  std::string label;
  Outcome outcome = Outcome::Plus;
};

/// Always flat: nested conjunctions are merged on construction.
struct Conjunction {
  std::vector<Literal> literals;
};

struct Disjunction {
  std::vector<Proposition> children;
};

struct Negation {
  std::shared_ptr<const Proposition> child;
};

/// Classical proposition over named dichotomic observables.
class Proposition {
 public:
  using Node = std::variant<Literal, Conjunction, Disjunction, Negation>;

  const Node& node() const { return node_; }

  bool is_literal() const { return std::holds_alternative<Literal>(node_); }
  bool is_conjunction() const {
    return std::holds_alternative<Conjunction>(node_);
  }

  /// Literals of a Literal or Conjunction node; empty for anything else.
  std::vector<Literal> literals() const;

  std::string to_string() const;

 private:
  friend Proposition literal(std::string, Outcome);
  friend Proposition conjunction(const std::vector<Proposition>&);
  friend Proposition disjunction(std::vector<Proposition>);
  friend Proposition negation(Proposition);
  explicit Proposition(Node node) : node_(std::move(node)) {}
  Node node_;
};

Proposition literal(std::string label, Outcome outcome);
/// Children must be literals or conjunctions (UnsupportedShape otherwise).
Proposition conjunction(const std::vector<Proposition>& children);
Proposition disjunction(std::vector<Proposition> children);
Proposition negation(Proposition child);

/// Parses `(A1=+ & B1=+ & B2=-) | (A1=- & B1=- & B2=-)`. `!` negates,
/// `&` binds tighter than `|`. Throws Parse on malformed text.
Proposition parse_proposition(std::string_view text);

/// Observables by label together with their subsystem membership.
class PropositionContext {
 public:
  explicit PropositionContext(std::vector<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return dim_; }

  const DichotomicObservable& observable(const std::string& label) const;
  int subsystem_of(const std::string& label) const;

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<int> dims_;
  int dim_ = 1;
  std::map<std::string, std::pair<int, int>, std::less<>> index_;
};

struct CompiledProposition {
  ComplexMatrix op;
  Proposition proposition;
  std::vector<std::string> rules;
};

/// Literal -> eigenprojector; And -> symmetric pseudo projection, factorized
/// over subsystems; Not X -> 1 - X; Or of pairwise classically disjoint
/// conjunctions -> sum; binary overlapping Or of conjunctions -> A + B - AB.
/// Anything else is rejected with UnsupportedShape.
CompiledProposition compile(const Proposition& p,
                            const PropositionContext& context);

/// Tr(rho * compiled operator). May fall outside [0, 1].
double pseudo_probability(const ComplexMatrix& rho, const Proposition& p,
                          const PropositionContext& context);

struct ClassicalityResult {
  double value = 0.0;
  bool classical = true;
};

inline constexpr double kClassicalTol = 1e-12;

ClassicalityResult classicality_check(const ComplexMatrix& rho,
                                      const Proposition& p,
                                      const PropositionContext& context);

}  // namespace pseudoprob
