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

#ifndef PADEPDE_SERIES_HPP_
#define PADEPDE_SERIES_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padepde/equation.hpp"

namespace padepde {

// Constant term of the Taylor solution: a value in the parameters and
// extension symbols that kills the equation's constant part.
struct SeedRoot {
  RationalFunction value;
};

// Truncated multivariate Taylor solution, graded by total rho degree. All
// indices of total degree <= truncation are stored, zeros included.
struct PowerSeries {
  int nrho = 0;
  int truncation = 0;
  std::map<MultiIndex, RationalFunction, GradedIndexLess> coeff;

  const RationalFunction& at(const MultiIndex& j) const {
    static const RationalFunction kZero;
    auto it = coeff.find(j);
    return it == coeff.end() ? kZero : it->second;
  }
};

namespace detail {

inline Rational falling_factorial(int j, int b) {
  Rational r(1);
  for (int i = 0; i < b; ++i) r *= (j - i);
  return r;
}

// prod_k j_k (j_k - 1) ... (j_k - beta_k + 1); zero when any j_k < beta_k.
inline Rational derivative_weight(const MultiIndex& j, const MultiIndex& beta) {
  Rational r(1);
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (beta[k] == 0) continue;
    if (j[k] < beta[k]) return Rational(0);
    r *= falling_factorial(j[k], beta[k]);
  }
  return r;
}

// Enumerates all d >= 0 componentwise with d <= bound and calls fn(d).
template <typename Fn>
void for_each_below(const MultiIndex& bound, Fn&& fn) {
  MultiIndex d = mi_zero(static_cast<int>(bound.size()));
  while (true) {
    fn(d);
    std::size_t k = 0;
    while (k < d.size()) {
      if (d[k] < bound[k]) {
        ++d[k];
        break;
      }
      d[k] = 0;
      ++k;
    }
    if (k == d.size()) return;
  }
}

class EquationEvaluator {
 public:
  EquationEvaluator(const EulerEquation& eq,
                    const std::map<MultiIndex, RationalFunction,
                                   GradedIndexLess>& coeff)
      : eq_(eq), coeff_(coeff) {}

  // Coefficient of rho^K after substituting the stored series into the
  // equation; every referenced series index must already be present.
  RationalFunction at(const MultiIndex& K) const {
    RationalFunction acc;
    for (const auto& term : eq_.terms) {
      if (term.factors.empty()) {
        if (term.rho_pow == K) acc += term.coef;
        continue;
      }
      auto base = mi_sub(K, term.rho_pow);
      if (!base) continue;
      RationalFunction sum = factor_sum(term, 0, *base);
      if (!sum.is_zero()) acc += term.coef * sum;
    }
    return acc;
  }

 private:
  RationalFunction factor_sum(const EulerTerm& term, std::size_t f,
                              const MultiIndex& remaining) const {
    const MultiIndex& beta = term.factors[f];
    if (f + 1 == term.factors.size()) {
      return factor_value(beta, remaining);
    }
    RationalFunction sum;
    for_each_below(remaining, [&](const MultiIndex& d) {
      RationalFunction v = factor_value(beta, d);
      if (v.is_zero()) return;
      RationalFunction rest = factor_sum(term, f + 1, *mi_sub(remaining, d));
      if (rest.is_zero()) return;
      sum += v * rest;
    });
    return sum;
  }

  // Contribution of one factor d^beta phi at shifted index d: c_{d+beta}
  // times the falling-factorial weight.
  RationalFunction factor_value(const MultiIndex& beta,
                                const MultiIndex& d) const {
    MultiIndex j = mi_add(d, beta);
    auto it = coeff_.find(j);
    if (it == coeff_.end())
      throw UnsupportedEquation(
          "equation references series index " + mi_to_string(j) +
          " outside the solved range; the equation is not graded as an "
          "Euler-form operator");
    if (it->second.is_zero()) return RationalFunction();
    Rational w = derivative_weight(j, beta);
    if (w == 0) return RationalFunction();
    return it->second * RationalFunction(w);
  }

  const EulerEquation& eq_;
  const std::map<MultiIndex, RationalFunction, GradedIndexLess>& coeff_;
};

inline void validate_solvable_shape(const EulerEquation& eq) {
  for (const auto& t : eq.terms) {
    if (t.factors.size() <= 1) {
      if (t.factors.empty()) continue;
      const MultiIndex& beta = t.factors[0];
      if (mi_is_zero(beta) || beta == t.rho_pow) continue;
      throw UnsupportedEquation(
          "single-derivative term is not an Euler operator (rho power must "
          "match the derivative order)");
    } else {
      for (const auto& beta : t.factors)
        if (!mi_is_zero(beta))
          throw UnsupportedEquation(
              "products of derivative factors are not supported by the "
              "order-by-order solver");
    }
  }
}

}  // namespace detail

// Verifies the user-supplied candidates against the equation's constant
// part, reporting the ones that reduce to zero; c0 = 0 is always tried.
inline std::vector<SeedRoot> seed_roots(
    const EulerEquation& eq, const std::vector<RationalFunction>& candidates,
    const RewriteSystem& rs) {
  auto verifies = [&](const RationalFunction& cand) {
    try {
      RationalFunction v;
      for (const auto& t : eq.terms) {
        if (!mi_is_zero(t.rho_pow)) continue;
        bool all_plain = true;
        for (const auto& beta : t.factors)
          if (!mi_is_zero(beta)) all_plain = false;
        if (!all_plain) continue;  // derivatives of a constant vanish
        RationalFunction p(Rational(1));
        for (std::size_t i = 0; i < t.factors.size(); ++i) p *= cand;
        v += t.coef * p;
      }
      return v.reduced(rs).is_zero();
    } catch (const ZeroDenominator&) {
      return false;
    } catch (const DivisionByZero&) {
      return false;
    }
  };

  std::vector<SeedRoot> out;
  RationalFunction zero;
  if (verifies(zero)) out.push_back(SeedRoot{zero});
  for (const auto& cand : candidates) {
    if (cand.is_zero()) continue;
    if (verifies(cand)) out.push_back(SeedRoot{cand});
  }
  if (out.empty()) throw NoCandidates();
  return out;
}

// Solves the multivariate Taylor coefficients order by order in graded
// lexicographic index order. At each index the graded equation coefficient
// is affine in the unknown; a vanishing linear part with nonzero
// inhomogeneity is an obstruction (a constraint is missing). Coefficients
// neither forced nor free default to zero.
inline PowerSeries solve_series(
    const EulerEquation& eq, const SeedRoot& seed,
    const std::vector<std::pair<MultiIndex, Symbol>>& frees, int N,
    const RewriteSystem& rs, bool reverse_same_degree = false) {
  detail::validate_solvable_shape(eq);
  PowerSeries s;
  s.nrho = eq.nrho;
  s.truncation = N;
  s.coeff[mi_zero(eq.nrho)] = seed.value.reduced(rs);

  detail::EquationEvaluator ev(eq, s.coeff);
  if (!ev.at(mi_zero(eq.nrho)).reduced(rs).is_zero())
    throw MathError("seed value does not satisfy the constant part of the "
                    "equation");

  std::map<MultiIndex, Symbol> free_at;
  for (const auto& [j, sym] : frees) {
    if (mi_total(j) < 1 || static_cast<int>(j.size()) != eq.nrho)
      throw UsageError("free coefficient index " + mi_to_string(j) +
                       " is invalid");
    free_at.emplace(j, sym);
  }

  // All indices of each total degree, in a deterministic order. The reverse
  // switch exists to test that the result does not depend on the order in
  // which same-degree indices are processed.
  std::vector<MultiIndex> idx;
  MultiIndex bound(eq.nrho, N);
  detail::for_each_below(bound, [&](const MultiIndex& j) {
    if (mi_total(j) <= N && !mi_is_zero(j)) idx.push_back(j);
  });
  std::sort(idx.begin(), idx.end(), GradedIndexLess{});
  if (reverse_same_degree) {
    auto it = idx.begin();
    while (it != idx.end()) {
      auto jt = it;
      while (jt != idx.end() && mi_total(*jt) == mi_total(*it)) ++jt;
      std::reverse(it, jt);
      it = jt;
    }
  }

  for (const auto& K : idx) {
    auto fit = free_at.find(K);
    if (fit != free_at.end()) {
      s.coeff[K] = RationalFunction(Polynomial(fit->second));
      if (!ev.at(K).reduced(rs).is_zero())
        throw MathError("coefficient at index " + mi_to_string(K) +
                        " is forced by the equation and cannot be left free");
      continue;
    }
    s.coeff[K] = RationalFunction();
    RationalFunction a = ev.at(K);
    s.coeff[K] = RationalFunction(Rational(1));
    RationalFunction b = ev.at(K);
    RationalFunction lin = (b - a).reduced(rs);
    RationalFunction inhom = a.reduced(rs);
    if (lin.is_zero()) {
      if (!inhom.is_zero())
        throw Obstruction(K, "no series solution: the equation at index " +
                                 mi_to_string(K) +
                                 " has zero linear part but nonzero "
                                 "inhomogeneity; a constraint is needed");
      s.coeff[K] = RationalFunction();
    } else {
      s.coeff[K] = ((-inhom) / lin).reduced(rs);
    }
  }
  return s;
}

// Residual of the solved series re-substituted into the equation: the
// nonzero graded coefficients with |K| <= upto.
inline std::vector<std::pair<MultiIndex, RationalFunction>> series_residual(
    const EulerEquation& eq, const PowerSeries& s, const RewriteSystem& rs,
    int upto) {
  detail::EquationEvaluator ev(eq, s.coeff);
  std::vector<std::pair<MultiIndex, RationalFunction>> out;
  std::vector<MultiIndex> idx;
  MultiIndex bound(s.nrho, upto);
  detail::for_each_below(bound, [&](const MultiIndex& j) {
    if (mi_total(j) <= upto) idx.push_back(j);
  });
  std::sort(idx.begin(), idx.end(), GradedIndexLess{});
  for (const auto& K : idx) {
    RationalFunction r = ev.at(K).reduced(rs);
    if (!r.is_zero()) out.emplace_back(K, std::move(r));
  }
  return out;
}

}  // namespace padepde

#endif  // PADEPDE_SERIES_HPP_
