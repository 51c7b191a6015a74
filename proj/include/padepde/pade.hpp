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

#ifndef PADEPDE_PADE_HPP_
#define PADEPDE_PADE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "padepde/series.hpp"

namespace padepde {

// The series rearranged along rho -> xi*rho: a[n] collects every
// coefficient of total degree n, so a[n] is homogeneous of rho-degree n.
struct GradedSeries {
  std::vector<RationalFunction> a;

  const RationalFunction& at(int n) const {
    static const RationalFunction kZero;
    if (n < 0 || n >= static_cast<int>(a.size())) return kZero;
    return a[n];
  }
};

// The [L/M] approximant in the grading variable: P = sum p[j] xi^j,
// Q = 1 + sum q[j] xi^j, with coefficients rational in the parameters (and
// possibly in rho for non-normal table entries).
struct PadeApproximant {
  std::vector<RationalFunction> p;  // length L+1
  std::vector<RationalFunction> q;  // length M+1, q[0] = 1
  int L = 0;
  int M = 0;
};

// Collapsed candidate solution at xi = 1 as an exact polynomial pair.
struct RationalAnsatz {
  Polynomial num;
  Polynomial den;
};

inline GradedSeries grade(const PowerSeries& s, int upto,
                          const std::vector<Symbol>& rho_syms) {
  if (s.truncation < upto)
    throw InsufficientOrder("series truncated at degree " +
                            std::to_string(s.truncation) +
                            " but grading needs degree " +
                            std::to_string(upto));
  GradedSeries g;
  g.a.assign(upto + 1, RationalFunction());
  for (const auto& [j, c] : s.coeff) {
    int n = mi_total(j);
    if (n > upto || c.is_zero()) continue;
    Monomial::Exps exps;
    for (std::size_t k = 0; k < j.size(); ++k)
      if (j[k] != 0) exps.emplace_back(rho_syms[k], j[k]);
    g.a[n] += c * RationalFunction(
                      Polynomial(Monomial::from_exps(exps), Rational(1)));
  }
  return g;
}

// Solves the Toeplitz system sum_{r+s=j} a_r q_s = 0 for j = L+1..L+M by
// exact Gaussian elimination over rational functions, normalizing each
// pivot row so the factored-denominator reduction keeps cancelling the
// shared factors these sparse systems produce. A column with no usable
// pivot leaves that unknown at zero (non-normal Pade table entries stay
// solvable whenever the system is consistent); an inconsistent system
// raises SingularSystem.
inline PadeApproximant pade_solve(const GradedSeries& g, int L, int M,
                                  const RewriteSystem& rs) {
  if (static_cast<int>(g.a.size()) < L + M + 1)
    throw InsufficientOrder("graded series does not cover degree L+M");
  PadeApproximant pa;
  pa.L = L;
  pa.M = M;
  pa.q.assign(M + 1, RationalFunction());
  pa.q[0] = RationalFunction(Rational(1));

  if (M > 0) {
    // Row for order j = L+1+i, columns s = 1..M, entry a_{j-s};
    // right-hand side -a_j in the last column.
    std::vector<std::vector<RationalFunction>> mat(
        M, std::vector<RationalFunction>(M + 1));
    for (int i = 0; i < M; ++i) {
      int j = L + 1 + i;
      for (int s = 1; s <= M; ++s) mat[i][s - 1] = g.at(j - s);
      mat[i][M] = -g.at(j);
    }

    std::vector<std::pair<int, int>> pivots;  // (row, col)
    int row = 0;
    for (int col = 0; col < M && row < M; ++col) {
      int pr = -1;
      for (int r = row; r < M; ++r) {
        mat[r][col] = mat[r][col].reduced(rs);
        if (!mat[r][col].is_zero()) {
          pr = r;
          break;
        }
      }
      if (pr < 0) continue;  // unknown q_{col+1} stays zero
      std::swap(mat[pr], mat[row]);
      RationalFunction piv = mat[row][col];
      for (int c = col; c <= M; ++c)
        mat[row][c] = (mat[row][c] / piv).reduced(rs);
      for (int r = row + 1; r < M; ++r) {
        RationalFunction f = mat[r][col].reduced(rs);
        mat[r][col] = RationalFunction();
        if (f.is_zero()) continue;
        for (int c = col + 1; c <= M; ++c)
          mat[r][c] = (mat[r][c] - f * mat[row][c]).reduced(rs);
      }
      pivots.emplace_back(row, col);
      ++row;
    }
    for (int r = row; r < M; ++r) {
      if (!mat[r][M].reduced(rs).is_zero())
        throw SingularSystem(
            "the Pade linear system is inconsistent at this (L, M); the "
            "table entry does not exist");
    }
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      auto [r, c] = *it;
      RationalFunction v = mat[r][M];
      for (int cc = c + 1; cc < M; ++cc)
        v -= mat[r][cc] * pa.q[cc + 1];
      pa.q[c + 1] = v.reduced(rs);
    }
  }

  pa.p.assign(L + 1, RationalFunction());
  for (int j = 0; j <= L; ++j) {
    RationalFunction v;
    for (int s = 0; s <= std::min(j, M); ++s) v += g.at(j - s) * pa.q[s];
    pa.p[j] = v.reduced(rs);
  }

  // Order condition: every graded component of Q*A - P through L+M must
  // vanish.
  for (int j = 0; j <= L + M; ++j) {
    RationalFunction v;
    for (int s = 0; s <= std::min(j, M); ++s) v += g.at(j - s) * pa.q[s];
    if (j <= L) v -= pa.p[j];
    if (!v.reduced(rs).is_zero())
      throw SingularSystem(
          "Pade order condition violated after elimination; the table entry "
          "is degenerate");
  }
  return pa;
}

// Sets xi = 1: num = sum p_j, den = sum q_j, cleared to an exact polynomial
// pair. The sign is normalized on the rho-free part of the denominator
// (falling back to the leading term when the denominator has no rho-free
// part), which pins the exact scale of the condition polynomials downstream.
inline RationalAnsatz collapse(const PadeApproximant& pa,
                               const RewriteSystem& rs,
                               const SymbolTable& tab) {
  RationalFunction num;
  for (const auto& p : pa.p) num += p;
  RationalFunction den;
  for (const auto& q : pa.q) den += q;
  num = num.reduced(rs);
  den = den.reduced(rs);
  if (den.is_zero()) throw DegenerateDenominator();

  // Cross-clear the parameter denominators, cancelling shared factors.
  RationalFunction ratio = (num / den).reduced(rs);
  Polynomial n = ratio.num();
  Polynomial d = ratio.den_expanded();
  // ratio = n / d exactly; scale to a jointly primitive integer pair.
  Rational cn = n.content();
  Rational cd = d.content();
  Rational gc = rational_gcd(cn, cd);
  if (gc != 0) {
    n.scale(Rational(1) / gc);
    d.scale(Rational(1) / gc);
  }

  d = rs.reduce(d);
  n = rs.reduce(n);
  if (d.is_zero()) throw DegenerateDenominator();

  // Divide out a common non-unit extension factor (division in the
  // quotient ring: p/s = p*s^(k-1)/replacement when exact). This keeps
  // adjoined radicals in the numerator the way the condition tables are
  // normalized.
  for (const auto& rule : rs.rules()) {
    if (!rule.pure_power() || rule.replacement.is_constant()) continue;
    Symbol s = rule.pattern.exps().front().first;
    int k = rule.pattern.exps().front().second;
    Polynomial repl = rs.reduce(rule.replacement);
    for (int pass = 0; pass < 8; ++pass) {
      Polynomial shift(Monomial(s, k - 1), Rational(1));
      auto qn = poly_divide_exact(rs.reduce(n * shift), repl);
      if (!qn) break;
      auto qd = poly_divide_exact(rs.reduce(d * shift), repl);
      if (!qd || qd->is_zero()) break;
      n = std::move(*qn);
      d = std::move(*qd);
    }
  }

  auto not_rho = [&](Symbol s) { return tab.kind(s) != SymbolKind::kRho; };
  Polynomial rho_free;
  for (const auto& [m, c] : d.terms())
    if (m.restricted(not_rho) == m) rho_free.add_term(m, c);
  const Polynomial& sign_source = rho_free.is_zero() ? d : rho_free;
  if (sign_source.leading_term().second < 0) {
    n = -n;
    d = -d;
  }
  return RationalAnsatz{std::move(n), std::move(d)};
}

}  // namespace padepde

#endif  // PADEPDE_PADE_HPP_
