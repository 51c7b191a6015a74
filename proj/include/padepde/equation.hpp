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

#ifndef PADEPDE_EQUATION_HPP_
#define PADEPDE_EQUATION_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padepde/ratfun.hpp"

namespace padepde {

// Derivative multi-indices and series indices over the rho variables (or
// the spacetime coordinates before the transform).
using MultiIndex = std::vector<int>;

inline int mi_total(const MultiIndex& a) {
  int t = 0;
  for (int x : a) t += x;
  return t;
}

inline MultiIndex mi_zero(int n) { return MultiIndex(n, 0); }

inline bool mi_is_zero(const MultiIndex& a) {
  for (int x : a)
    if (x != 0) return false;
  return true;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline std::optional<MultiIndex> mi_sub(const MultiIndex& a,
                                        const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) return std::nullopt;
  }
  return r;
}

// Total degree first, then componentwise lexicographic. Reverse iteration
// over a map with this order lists (3,0) before (2,1), matching the display
// convention for graded indices.
struct GradedIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int ta = mi_total(a), tb = mi_total(b);
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

inline std::string mi_to_string(const MultiIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

// The functional ansatz: rho variables with all first derivatives known as
// polynomials in rho (for the exponential ansatz, d rho_k / d x_mu is
// i*k_{k,mu}*rho_k).
struct AnsatzDefinition {
  std::vector<Symbol> rho;
  std::vector<Symbol> coords;
  std::map<std::pair<int, int>, Polynomial> table;  // (mu, k) -> F

  const Polynomial& f(int mu, int k) const {
    static const Polynomial kZero;
    auto it = table.find({mu, k});
    return it == table.end() ? kZero : it->second;
  }
};

// One product of derivative factors applied to phi, with a parameter
// coefficient: coef * prod_f d^{alpha_f} phi. An empty factor list is a pure
// source term.
struct SpacetimeTerm {
  RationalFunction coef;
  std::vector<MultiIndex> factors;  // over coordinates
};

struct SpacetimeEquation {
  int dim = 0;
  std::vector<SpacetimeTerm> terms;
};

// A term of the transformed equation: coef * rho^rho_pow *
// prod_f d^{beta_f} phi-hat, with beta over the rho variables and the
// coefficient free of rho.
struct EulerTerm {
  RationalFunction coef;
  MultiIndex rho_pow;
  std::vector<MultiIndex> factors;
};

struct EulerEquation {
  int nrho = 0;
  std::vector<EulerTerm> terms;
};

inline void canonicalize(EulerEquation& eq) {
  using Key = std::pair<MultiIndex, std::vector<MultiIndex>>;
  std::map<Key, RationalFunction> merged;
  for (auto& t : eq.terms) {
    std::sort(t.factors.begin(), t.factors.end());
    Key key{t.rho_pow, t.factors};
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(std::move(key), std::move(t.coef));
    else
      it->second += t.coef;
  }
  eq.terms.clear();
  for (auto& [key, coef] : merged) {
    if (coef.is_zero()) continue;
    eq.terms.push_back(EulerTerm{std::move(coef), key.first, key.second});
  }
}

inline EulerEquation operator*(const RationalFunction& c,
                               const EulerEquation& eq) {
  EulerEquation out = eq;
  for (auto& t : out.terms) t.coef *= c;
  canonicalize(out);
  return out;
}

inline EulerEquation operator+(const EulerEquation& a, const EulerEquation& b) {
  EulerEquation out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  canonicalize(out);
  return out;
}

inline bool euler_equal(const EulerEquation& a, const EulerEquation& b,
                        const RewriteSystem& rs = RewriteSystem()) {
  EulerEquation ca = a, cb = b;
  canonicalize(ca);
  canonicalize(cb);
  if (ca.terms.size() != cb.terms.size()) return false;
  for (std::size_t i = 0; i < ca.terms.size(); ++i) {
    const auto& ta = ca.terms[i];
    const auto& tb = cb.terms[i];
    if (ta.rho_pow != tb.rho_pow || ta.factors != tb.factors) return false;
    if (!equal_cross(ta.coef, tb.coef, rs)) return false;
  }
  return true;
}

// Applies the named constraint rules to the equation coefficients (and only
// to them): this is how a dispersion relation like k10^2 -> k1sq - m^2 turns
// the raw transformed equation into its reduced form.
inline EulerEquation reduce_equation(const EulerEquation& eq,
                                     const RewriteSystem& rs) {
  EulerEquation out;
  out.nrho = eq.nrho;
  for (const auto& t : eq.terms) {
    EulerTerm nt = t;
    nt.coef = t.coef.reduced(rs);
    if (nt.coef.is_zero()) continue;
    out.terms.push_back(std::move(nt));
  }
  canonicalize(out);
  return out;
}

namespace detail {

// One summand of a transformed single-phi derivative: coef(rho, params) *
// d^beta phi-hat.
struct ChainPiece {
  Polynomial coef;
  MultiIndex beta;
};

inline std::vector<ChainPiece> chain_derivative(
    const std::vector<ChainPiece>& in, int mu, const AnsatzDefinition& ansatz) {
  std::map<MultiIndex, Polynomial> acc;
  const int nrho = static_cast<int>(ansatz.rho.size());
  for (const auto& piece : in) {
    for (int k = 0; k < nrho; ++k) {
      const Polynomial& fk = ansatz.f(mu, k);
      if (fk.is_zero()) continue;
      Polynomial dc = piece.coef.derivative(ansatz.rho[k]);
      if (!dc.is_zero()) acc[piece.beta] += fk * dc;
      MultiIndex beta = piece.beta;
      beta[k] += 1;
      acc[beta] += fk * piece.coef;
    }
  }
  std::vector<ChainPiece> out;
  for (auto& [beta, coef] : acc) {
    if (coef.is_zero()) continue;
    out.push_back(ChainPiece{std::move(coef), beta});
  }
  return out;
}

}  // namespace detail

// Chain rule d_mu = sum_k F_{mu,k}(rho) d_{rho_k}, applied recursively to
// every derivative factor; the result is expanded and canonical.
inline EulerEquation transform(const SpacetimeEquation& eq,
                               const AnsatzDefinition& ansatz,
                               const SymbolTable& tab) {
  const int nrho = static_cast<int>(ansatz.rho.size());
  for (const auto& [key, f] : ansatz.table) {
    for (const auto& [m, c] : f.terms()) {
      for (const auto& [s, e] : m.exps()) {
        if (tab.kind(s) == SymbolKind::kCoordinate)
          throw UnsupportedAnsatz(
              "derivative table entry mentions a coordinate; entries must be "
              "polynomial in the rho variables and parameters");
      }
    }
  }

  // Transformed pieces per distinct spacetime derivative order.
  std::map<MultiIndex, std::vector<detail::ChainPiece>> memo;
  auto pieces_for = [&](const MultiIndex& alpha)
      -> const std::vector<detail::ChainPiece>& {
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;
    std::vector<detail::ChainPiece> cur{
        detail::ChainPiece{Polynomial(Rational(1)), mi_zero(nrho)}};
    for (int mu = 0; mu < static_cast<int>(alpha.size()); ++mu)
      for (int rep = 0; rep < alpha[mu]; ++rep)
        cur = detail::chain_derivative(cur, mu, ansatz);
    return memo.emplace(alpha, std::move(cur)).first->second;
  };

  auto is_rho = [&](Symbol s) { return tab.kind(s) == SymbolKind::kRho; };

  EulerEquation out;
  out.nrho = nrho;
  for (const auto& term : eq.terms) {
    // Expand the product of transformed factors.
    struct Combo {
      Polynomial coef;
      std::vector<MultiIndex> betas;
    };
    std::vector<Combo> combos{Combo{Polynomial(Rational(1)), {}}};
    for (const auto& alpha : term.factors) {
      const auto& pieces = pieces_for(alpha);
      std::vector<Combo> next;
      for (const auto& combo : combos) {
        for (const auto& piece : pieces) {
          Combo c;
          c.coef = combo.coef * piece.coef;
          c.betas = combo.betas;
          c.betas.push_back(piece.beta);
          next.push_back(std::move(c));
        }
      }
      combos = std::move(next);
    }
    for (auto& combo : combos) {
      // Split the rho content of the polynomial coefficient per monomial.
      for (const auto& [m, c] : combo.coef.terms()) {
        Monomial rho_part = m.restricted(is_rho);
        Monomial rest = m / rho_part;
        MultiIndex rho_pow = mi_zero(nrho);
        for (int k = 0; k < nrho; ++k)
          rho_pow[k] = rho_part.exponent(ansatz.rho[k]);
        EulerTerm t;
        t.coef = term.coef * RationalFunction(Polynomial(rest, c));
        t.rho_pow = std::move(rho_pow);
        t.factors = combo.betas;
        out.terms.push_back(std::move(t));
      }
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace padepde

#endif  // PADEPDE_EQUATION_HPP_
