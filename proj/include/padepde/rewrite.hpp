// Copyright 2026 The padepde Authors
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

#ifndef PADEPDE_REWRITE_HPP_
#define PADEPDE_REWRITE_HPP_

#include <string>
#include <vector>

#include "padepde/polynomial.hpp"

namespace padepde {

// Oriented monomial -> polynomial rule. Valid rules strictly decrease the
// total degree in the pattern's own symbols, which is the termination
// witness checked at construction (this covers both pure powers like
// i^2 -> -1 and products of distinct symbols replaced by polynomials free
// of both).
struct RewriteRule {
  std::string name;
  Monomial pattern;
  Polynomial replacement;

  bool pure_power() const { return pattern.exps().size() == 1; }
};

class RewriteSystem {
 public:
  RewriteSystem() = default;

  void add(RewriteRule rule) {
    validate(rule);
    rules_.push_back(std::move(rule));
    reorder();
  }

  RewriteSystem merged(const RewriteSystem& extra) const {
    RewriteSystem out = *this;
    for (const auto& r : extra.rules_) out.rules_.push_back(r);
    out.reorder();
    return out;
  }

  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }

  // Degree of the pure-power rule on s (i^2 -> -1 gives 2), or 0 if none.
  int power_rule_degree(Symbol s) const {
    for (const auto& r : rules_) {
      const auto& ex = r.pattern.exps();
      if (ex.size() == 1 && ex[0].first == s) return ex[0].second;
    }
    return 0;
  }

  // Fixpoint reduction: no monomial of the result matches any pattern. The
  // result equals the input modulo the ideal generated by
  // (pattern - replacement). A step budget guards against ill-formed rule
  // sets that cycle through each other's symbols.
  Polynomial reduce(const Polynomial& p) const {
    if (rules_.empty() || p.is_zero()) return p;
    Polynomial cur = p;
    long budget = step_budget(p);
    long steps = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = cur.terms().rbegin(); it != cur.terms().rend(); ++it) {
        const Monomial m = it->first;
        const Rational c = it->second;
        const RewriteRule* hit = nullptr;
        for (const auto& r : rules_) {
          if (r.pattern.divides(m)) {
            hit = &r;
            break;
          }
        }
        if (!hit) continue;
        if (++steps > budget)
          throw NonTerminating(
              "rewrite fixpoint exceeded its step budget; the rule set "
              "appears non-terminating");
        cur.add_term(m, -c);
        cur += Polynomial(m / hit->pattern, c) * hit->replacement;
        changed = true;
        break;
      }
    }
    return cur;
  }

 private:
  void validate(const RewriteRule& rule) const {
    if (rule.pattern.is_one())
      throw UsageError("rewrite pattern must be a non-trivial monomial");
    int pat_deg = rule.pattern.degree();
    auto in_pattern = [&](Symbol s) { return rule.pattern.exponent(s) > 0; };
    for (const auto& [m, c] : rule.replacement.terms()) {
      if (m.degree_if(in_pattern) >= pat_deg)
        throw UsageError("rewrite rule '" + rule.name +
                         "' does not decrease the degree in its own symbols");
    }
  }

  // Pure-power rules fire before mixed-symbol product rules, preserving
  // declaration order within each class.
  void reorder() {
    std::vector<RewriteRule> out;
    out.reserve(rules_.size());
    for (const auto& r : rules_)
      if (r.pure_power()) out.push_back(r);
    for (const auto& r : rules_)
      if (!r.pure_power()) out.push_back(r);
    rules_ = std::move(out);
  }

  long step_budget(const Polynomial& p) const {
    long deg = std::max(1, p.degree());
    long nrules = static_cast<long>(std::max<std::size_t>(1, rules_.size()));
    long nterms = static_cast<long>(std::max<std::size_t>(1, p.term_count()));
    return 8 * deg * nrules * nterms + 64;
  }

  std::vector<RewriteRule> rules_;
};

// Spec-level entry point; member form is used internally.
inline Polynomial rewrite_fixpoint(const Polynomial& p,
                                   const RewriteSystem& rs) {
  return rs.reduce(p);
}

}  // namespace padepde

#endif  // PADEPDE_REWRITE_HPP_
