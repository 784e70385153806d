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

#include "pseudoprob/propositions.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace pseudoprob {

std::vector<Literal> Proposition::literals() const {
  if (const auto* l = std::get_if<Literal>(&node_)) return {*l};
  if (const auto* c = std::get_if<Conjunction>(&node_)) return c->literals;
  return {};
}

std::string Proposition::to_string() const {
  struct Printer {
    std::string operator()(const Literal& l) const {
      return l.label + "=" + symbol(l.outcome);
    }
    std::string operator()(const Conjunction& c) const {
      std::string out = "(";
      for (std::size_t i = 0; i < c.literals.size(); ++i) {
        if (i > 0) out += " & ";
        out += (*this)(c.literals[i]);
      }
      return out + ")";
    }
    std::string operator()(const Disjunction& d) const {
      std::string out = "(";
      for (std::size_t i = 0; i < d.children.size(); ++i) {
        if (i > 0) out += " | ";
        out += d.children[i].to_string();
      }
      return out + ")";
    }
    std::string operator()(const Negation& n) const {
      return "!" + n.child->to_string();
    }
  };
  return std::visit(Printer{}, node_);
}

Proposition literal(std::string label, Outcome outcome) {
  return Proposition(Literal{std::move(label), outcome});
}

Proposition conjunction(const std::vector<Proposition>& children) {
  Conjunction out;
  for (const Proposition& c : children) {
    if (!c.is_literal() && !c.is_conjunction()) {
      throw Error(ErrorCode::UnsupportedShape,
                  "conjunction children must be literals or conjunctions: " +
                      c.to_string());
    }
    for (Literal& l : c.literals()) out.literals.push_back(std::move(l));
  }
  if (out.literals.empty()) {
    throw Error(ErrorCode::UnsupportedShape, "empty conjunction");
  }
  return Proposition(std::move(out));
}

Proposition disjunction(std::vector<Proposition> children) {
  if (children.empty()) {
    throw Error(ErrorCode::UnsupportedShape, "empty disjunction");
  }
  return Proposition(Disjunction{std::move(children)});
}

Proposition negation(Proposition child) {
  return Proposition(
      Negation{std::make_shared<const Proposition>(std::move(child))});
}

// --- parser ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Proposition parse() {
    Proposition p = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse,
                why + " at offset " + std::to_string(pos_) + " in '" +
                    std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Proposition parse_or() {
    std::vector<Proposition> terms{parse_and()};
    while (accept('|')) terms.push_back(parse_and());
    if (terms.size() == 1) return terms.front();
    return disjunction(std::move(terms));
  }

  Proposition parse_and() {
    std::vector<Proposition> factors{parse_unary()};
    while (accept('&')) factors.push_back(parse_unary());
    if (factors.size() == 1) return factors.front();
    return conjunction(factors);
  }

  Proposition parse_unary() {
    if (accept('!')) return negation(parse_unary());
    if (accept('(')) {
      Proposition inner = parse_or();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    return parse_literal();
  }

  Proposition parse_literal() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected an observable label");
    std::string label(text_.substr(start, pos_ - start));
    if (!accept('=')) fail("expected '=' after '" + label + "'");
    Outcome outcome;
    if (accept('+')) {
      outcome = Outcome::Plus;
    } else if (accept('-')) {
      outcome = Outcome::Minus;
    } else {
      fail("expected '+' or '-'");
    }
    if (pos_ < text_.size() && text_[pos_] == '1') ++pos_;
    return literal(std::move(label), outcome);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Proposition parse_proposition(std::string_view text) {
  return Parser(text).parse();
}

// --- context ----------------------------------------------------------------

PropositionContext::PropositionContext(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  for (std::size_t s = 0; s < subsystems_.size(); ++s) {
    const Subsystem& sub = subsystems_[s];
    dims_.push_back(sub.dim);
    dim_ *= sub.dim;
    for (std::size_t i = 0; i < sub.observables.size(); ++i) {
      const auto& obs = sub.observables[i];
      if (obs.dim() != sub.dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "observable '" + obs.label() +
                        "' does not match its subsystem dimension");
      }
      if (!index_.emplace(obs.label(), std::pair{int(s), int(i)}).second) {
        throw Error(ErrorCode::UnknownLabel,
                    "label '" + obs.label() + "' declared twice");
      }
    }
  }
}

const DichotomicObservable& PropositionContext::observable(
    const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, label);
  return subsystems_[static_cast<std::size_t>(it->second.first)]
      .observables[static_cast<std::size_t>(it->second.second)];
}

int PropositionContext::subsystem_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, label);
  return it->second.first;
}

// --- compiler ---------------------------------------------------------------

namespace {

bool contradicts(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  for (const Literal& x : a) {
    for (const Literal& y : b) {
      if (x.label == y.label && x.outcome != y.outcome) return true;
    }
  }
  return false;
}

class Compiler {
 public:
  explicit Compiler(const PropositionContext& ctx) : ctx_(ctx) {}

  std::vector<std::string> rules;

  ComplexMatrix compile(const Proposition& p) {
    return std::visit([this](const auto& node) { return visit(node); },
                      p.node());
  }

 private:
  ComplexMatrix visit(const Literal& l) {
    rules.push_back("literal:" + l.label);
    return conjunction_operator({l});
  }

  ComplexMatrix visit(const Conjunction& c) {
    rules.push_back("conjunction:symmetric");
    return conjunction_operator(c.literals);
  }

  ComplexMatrix visit(const Negation& n) {
    rules.push_back("negation");
    return ComplexMatrix::Identity(ctx_.dim(), ctx_.dim()) -
           compile(*n.child);
  }

  ComplexMatrix visit(const Disjunction& d) {
    if (d.children.size() == 1) return compile(d.children.front());

    const bool all_conjunctions =
        std::all_of(d.children.begin(), d.children.end(),
                    [](const Proposition& c) {
                      return c.is_literal() || c.is_conjunction();
                    });
    if (all_conjunctions && pairwise_disjoint(d.children)) {
      rules.push_back("disjunction:disjoint-sum");
      ComplexMatrix sum = ComplexMatrix::Zero(ctx_.dim(), ctx_.dim());
      for (const Proposition& c : d.children) sum += compile(c);
      return sum;
    }
    if (all_conjunctions && d.children.size() == 2) {
      rules.push_back("disjunction:inclusion-exclusion");
      std::vector<Literal> both = d.children[0].literals();
      for (const Literal& l : d.children[1].literals()) both.push_back(l);
      return compile(d.children[0]) + compile(d.children[1]) -
             conjunction_operator(both);
    }
    throw Error(ErrorCode::UnsupportedShape,
                "disjunction is neither a disjoint sum of conjunctions nor a "
                "binary disjunction of conjunctions: " +
                    disjunction(d.children).to_string());
  }

  static bool pairwise_disjoint(const std::vector<Proposition>& children) {
    for (std::size_t i = 0; i < children.size(); ++i) {
      const auto a = children[i].literals();
      for (std::size_t j = i + 1; j < children.size(); ++j) {
        if (!contradicts(a, children[j].literals())) return false;
      }
    }
    return true;
  }

  ComplexMatrix conjunction_operator(const std::vector<Literal>& literals) {
    std::vector<std::vector<ComplexMatrix>> per_subsystem(ctx_.dims().size());
    std::vector<std::vector<const Literal*>> seen(ctx_.dims().size());
    for (const Literal& l : literals) {
      const int s = ctx_.subsystem_of(l.label);
      auto& already = seen[static_cast<std::size_t>(s)];
      const bool duplicate =
          std::any_of(already.begin(), already.end(), [&](const Literal* x) {
            return x->label == l.label && x->outcome == l.outcome;
          });
      if (duplicate) continue;
      already.push_back(&l);
      per_subsystem[static_cast<std::size_t>(s)].push_back(
          projector(ctx_.observable(l.label), l.outcome));
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t s = 0; s < per_subsystem.size(); ++s) {
      const int dim = ctx_.dims()[s];
      if (per_subsystem[s].empty()) {
        out = kron(out, ComplexMatrix::Identity(dim, dim));
      } else {
        out = kron(out, symmetric_pseudo_projection(per_subsystem[s]));
      }
    }
    return out;
  }

  const PropositionContext& ctx_;
};

}  // namespace

CompiledProposition compile(const Proposition& p,
                            const PropositionContext& context) {
  Compiler compiler(context);
  ComplexMatrix op = compiler.compile(p);
  return CompiledProposition{0.5 * (op + op.adjoint()), p,
                             std::move(compiler.rules)};
}

double pseudo_probability(const ComplexMatrix& rho, const Proposition& p,
                          const PropositionContext& context) {
  if (rho.rows() != context.dim() || rho.cols() != context.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "state dimension " + std::to_string(rho.rows()) +
                    " vs context dimension " + std::to_string(context.dim()));
  }
  return trace_product(rho, compile(p, context).op);
}

ClassicalityResult classicality_check(const ComplexMatrix& rho,
                                      const Proposition& p,
                                      const PropositionContext& context) {
  const double value = pseudo_probability(rho, p, context);
  return {value, value >= -kClassicalTol && value <= 1.0 + kClassicalTol};
}

}  // namespace pseudoprob
