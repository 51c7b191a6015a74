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

#ifndef PADEPDE_RESIDUAL_HPP_
#define PADEPDE_RESIDUAL_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padepde/pade.hpp"

namespace padepde {

// The algebraic system a candidate solution must satisfy: the graded
// numerator coefficients of the cleared residual, plus the cleared
// denominator that must stay nonzero.
struct ConditionSet {
  std::map<MultiIndex, Polynomial, GradedIndexLess> conditions;
  Polynomial denominator;
  int max_degree = 0;

  bool empty() const { return conditions.empty(); }
};

struct ExactnessVerdict {
  bool exact = false;
  ConditionSet residual_conditions;
  bool denominator_ok = false;
};

namespace detail {

// Numerator of d^beta (u/v) over v^(1+|beta|), built by the quotient rule
// one derivative at a time.
class QuotientDerivatives {
 public:
  QuotientDerivatives(const Polynomial& u, const Polynomial& v,
                      const std::vector<Symbol>& rho)
      : v_(v), rho_(rho) {
    cache_.emplace(mi_zero(static_cast<int>(rho.size())), u);
  }

  const Polynomial& numerator(const MultiIndex& beta) {
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    int k = 0;
    while (beta[k] == 0) ++k;
    MultiIndex prev = beta;
    prev[k] -= 1;
    const Polynomial& np = numerator(prev);
    int b = mi_total(prev);
    Polynomial n = np.derivative(rho_[k]) * v_ -
                   Rational(b + 1) * (np * v_.derivative(rho_[k]));
    return cache_.emplace(beta, std::move(n)).first->second;
  }

 private:
  Polynomial v_;
  std::vector<Symbol> rho_;
  std::map<MultiIndex, Polynomial> cache_;
};

inline int clearing_power(const EulerEquation& eq) {
  int w = 0;
  for (const auto& t : eq.terms) {
    int s = 0;
    for (const auto& beta : t.factors) s += 1 + mi_total(beta);
    w = std::max(w, s);
  }
  return w;
}

}  // namespace detail

// Substitutes num/den into the equation, clears den^w with the structural
// power w = max over terms of sum_f (1 + |beta_f|), expands, reduces, and
// collects the nonvanishing coefficients per rho multi-index. Also clears
// any parameter denominators of the equation coefficients; for equations
// with polynomial coefficients the conditions come out exactly as written.
inline ConditionSet conditions(const RationalAnsatz& ansatz,
                               const EulerEquation& eq,
                               const RewriteSystem& rs,
                               const SymbolTable& tab,
                               const std::vector<Symbol>& rho_syms) {
  Polynomial v = rs.reduce(ansatz.den);
  if (v.is_zero())
    throw ZeroDenominator("ansatz denominator reduces to zero");
  Polynomial u = rs.reduce(ansatz.num);

  const int w = detail::clearing_power(eq);
  detail::QuotientDerivatives derivs(u, v, rho_syms);

  RationalFunction residual;
  for (const auto& t : eq.terms) {
    Monomial::Exps exps;
    for (std::size_t k = 0; k < t.rho_pow.size(); ++k)
      if (t.rho_pow[k] != 0) exps.emplace_back(rho_syms[k], t.rho_pow[k]);
    Polynomial piece(Monomial::from_exps(exps), Rational(1));
    int used = 0;
    for (const auto& beta : t.factors) {
      piece *= derivs.numerator(beta);
      used += 1 + mi_total(beta);
    }
    piece *= v.pow(w - used);
    residual += t.coef * RationalFunction(piece);
  }

  // The parameter content of the coefficients (a common rho-free factor)
  // multiplies every condition uniformly and cannot change vanishing.
  Polynomial cleared = rs.reduce(residual.num());

  // Structural degree bound for the condition indices.
  auto is_rho = [&](Symbol s) { return tab.kind(s) == SymbolKind::kRho; };
  int deg_u = u.degree_if(is_rho);
  int deg_v = v.degree_if(is_rho);
  int lambda_bound = 0;
  for (const auto& t : eq.terms) {
    int d = mi_total(t.rho_pow);
    int used = 0;
    for (const auto& beta : t.factors) {
      d += deg_u + mi_total(beta) * std::max(0, deg_v - 1);
      used += 1 + mi_total(beta);
    }
    d += (w - used) * deg_v;
    lambda_bound = std::max(lambda_bound, d);
  }

  ConditionSet cs;
  cs.max_degree = lambda_bound;
  for (auto& [rho_mono, coef] : cleared.collect_by(is_rho)) {
    Polynomial reduced = rs.reduce(coef);
    if (reduced.is_zero()) continue;
    MultiIndex j(rho_syms.size(), 0);
    for (std::size_t k = 0; k < rho_syms.size(); ++k)
      j[k] = rho_mono.exponent(rho_syms[k]);
    if (mi_total(j) > cs.max_degree)
      throw MathError("condition degree exceeds the structural bound");
    cs.conditions.emplace(std::move(j), std::move(reduced));
  }
  cs.denominator = rs.reduce(v.pow(w));
  if (cs.denominator.is_zero())
    throw ZeroDenominator("cleared denominator reduces to zero");
  return cs;
}

// Re-reduces the condition system under base + extra rules: exact iff every
// condition vanishes and the denominator survives.
inline ExactnessVerdict verify(const RationalAnsatz& ansatz,
                               const EulerEquation& eq,
                               const RewriteSystem& rs_base,
                               const RewriteSystem& extra,
                               const SymbolTable& tab,
                               const std::vector<Symbol>& rho_syms) {
  ConditionSet base = conditions(ansatz, eq, rs_base, tab, rho_syms);
  RewriteSystem merged = rs_base.merged(extra);
  ExactnessVerdict out;
  out.residual_conditions.max_degree = base.max_degree;
  for (const auto& [j, poly] : base.conditions) {
    Polynomial r = merged.reduce(poly);
    if (!r.is_zero()) out.residual_conditions.conditions.emplace(j, std::move(r));
  }
  out.residual_conditions.denominator = merged.reduce(base.denominator);
  out.denominator_ok = !out.residual_conditions.denominator.is_zero();
  out.exact = out.denominator_ok && out.residual_conditions.empty();
  return out;
}

// Factorization report: maximal multiplicity of each candidate divisor in
// each condition, with the remaining cofactor.
struct FactorReport {
  std::map<MultiIndex, std::pair<std::vector<int>, Polynomial>,
           GradedIndexLess>
      entries;
};

inline FactorReport factor_check(const ConditionSet& cs,
                                 const std::vector<Polynomial>& candidates) {
  for (const auto& cand : candidates) {
    if (cand.is_zero()) throw UsageError("zero factor candidate");
    if (cand.is_constant())
      throw UsageError("constant factor candidates are not allowed");
  }
  FactorReport out;
  for (const auto& [j, poly] : cs.conditions) {
    std::vector<int> mult(candidates.size(), 0);
    Polynomial cof = poly;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      while (true) {
        auto q = poly_divide_exact(cof, candidates[i]);
        if (!q) break;
        cof = std::move(*q);
        mult[i] += 1;
      }
    }
    out.entries.emplace(j, std::make_pair(std::move(mult), std::move(cof)));
  }
  return out;
}

}  // namespace padepde

#endif  // PADEPDE_RESIDUAL_HPP_
