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

#ifndef PADEPDE_RATFUN_HPP_
#define PADEPDE_RATFUN_HPP_

#include <string>
#include <utility>
#include <vector>

#include "padepde/polynomial.hpp"
#include "padepde/rewrite.hpp"

namespace padepde {

inline Rational rational_pow(const Rational& r, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out *= r;
  return out;
}

// Exact rational function kept as numerator / product of denominator
// factors. Factors are non-constant, integer-primitive polynomials with a
// positive leading coefficient; the numerator absorbs all scalars. The pair
// is not guaranteed to be in lowest terms (there is no general multivariate
// gcd here); reduction cancels integer content, common monomials, and any
// denominator factor that divides the numerator exactly. Equality is decided
// by cross-multiplication.
class RationalFunction {
 public:
  using Factors = std::vector<std::pair<Polynomial, int>>;

  RationalFunction() = default;
  /* implicit */ RationalFunction(Polynomial num) : num_(std::move(num)) {}
  /* implicit */ RationalFunction(const Rational& c) : num_(c) {}
  /* implicit */ RationalFunction(int c) : num_(Rational(c)) {}
  explicit RationalFunction(Symbol s) : num_(Polynomial(s)) {}

  static RationalFunction from_num_den(const Polynomial& num,
                                       const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero();
    RationalFunction r(num);
    r.divide_by_poly(den);
    return r;
  }

  const Polynomial& num() const { return num_; }
  const Factors& den_factors() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  const Polynomial& as_polynomial() const {
    if (!den_.empty())
      throw MathError("rational function is not a polynomial");
    return num_;
  }

  Polynomial den_expanded() const {
    Polynomial d(Rational(1));
    for (const auto& [f, e] : den_) d *= f.pow(e);
    return d;
  }

  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RationalFunction r;
    Polynomial comp_a(Rational(1)), comp_b(Rational(1));
    r.den_ = merge_lcm(a.den_, b.den_, comp_a, comp_b);
    r.num_ = a.num_ * comp_a + b.num_ * comp_b;
    r.reduce_structural();
    return r;
  }

  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b) {
    return a + (-b);
  }

  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b) {
    RationalFunction r;
    r.num_ = a.num_ * b.num_;
    r.den_ = merge_product(a.den_, b.den_);
    r.reduce_structural();
    return r;
  }

  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero();
    RationalFunction inv;
    inv.num_ = b.den_expanded();
    inv.divide_by_poly(b.num_);
    return a * inv;
  }

  RationalFunction& operator+=(const RationalFunction& o) {
    *this = *this + o;
    return *this;
  }
  RationalFunction& operator-=(const RationalFunction& o) {
    *this = *this - o;
    return *this;
  }
  RationalFunction& operator*=(const RationalFunction& o) {
    *this = *this * o;
    return *this;
  }
  RationalFunction& operator/=(const RationalFunction& o) {
    *this = *this / o;
    return *this;
  }

  // Reduces numerator and denominator factors through the rewrite system.
  // Factor powers reduce as a whole (slam with exponent 2 must see the
  // slam^2 rule), and denominator symbols that carry a pure-power rule are
  // rationalized out first (1/i becomes -i, 1/slam becomes slam/lambda).
  // A factor power that reduces to zero signals division by an element of
  // the rule ideal.
  RationalFunction reduced(const RewriteSystem& rs) const {
    RationalFunction work = *this;
    for (auto& [f, e] : work.den_) {
      if (f.term_count() != 1) continue;
      Monomial lead = f.leading_term().first;
      if (lead.exps().size() != 1) continue;
      Symbol s = lead.exps().front().first;
      int k = rs.power_rule_degree(s);
      if (k < 2) continue;
      int rem = e % k;
      if (rem == 0) continue;
      work.num_ *= Polynomial(Monomial(s, k - rem), Rational(1));
      e += k - rem;
    }
    RationalFunction r;
    r.num_ = rs.reduce(work.num_);
    for (const auto& [f, e] : work.den_) {
      Polynomial fe = f.pow(e);
      Polynomial fr = rs.reduce(fe);
      if (fr.is_zero()) throw ZeroDenominator();
      if (fr == fe) {
        r.push_factor(f, e);
        continue;
      }
      if (fr.is_constant()) {
        r.num_.scale(Rational(1) / fr.constant_value());
        continue;
      }
      Rational scale;
      Polynomial norm = normalize_factor(fr, scale);
      r.num_.scale(Rational(1) / scale);
      r.push_factor(std::move(norm), 1);
    }
    r.reduce_structural();
    return r;
  }

  // Equality modulo the rule ideal, by cross-multiplication.
  friend bool equal_cross(const RationalFunction& a, const RationalFunction& b,
                          const RewriteSystem& rs = RewriteSystem()) {
    Polynomial lhs = rs.reduce(a.num_ * b.den_expanded());
    Polynomial rhs = rs.reduce(b.num_ * a.den_expanded());
    return lhs == rhs;
  }

  // Integer pair (num, den) with joint content 1 and a positive-leading
  // denominator, for printing.
  std::pair<Polynomial, Polynomial> display_pair() const {
    if (num_.is_zero()) return {Polynomial(), Polynomial(Rational(1))};
    BigInt den_lcm = 1;
    for (const auto& [m, c] : num_.terms()) {
      const BigInt& d = denominator(c);
      den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
    }
    Rational q(den_lcm);
    return {num_ * q, den_expanded() * q};
  }

  std::string to_string(const SymbolTable& tab) const {
    if (den_.empty()) return num_.to_string(tab);
    auto [n, d] = display_pair();
    return "(" + n.to_string(tab) + ")/(" + d.to_string(tab) + ")";
  }

 private:
  // factor = f / scale with integer coefficients, content 1 and positive
  // leading coefficient; f must be non-constant and nonzero.
  static Polynomial normalize_factor(const Polynomial& f, Rational& scale) {
    scale = f.content();
    if (f.leading_term().second < 0) scale = -scale;
    Polynomial norm = f;
    norm.scale(Rational(1) / scale);
    return norm;
  }

  // Single-term factors are split into per-symbol powers so that monomial
  // denominators have one canonical representation.
  void push_factor(Polynomial f, int e) {
    if (e == 0) return;
    if (f.term_count() == 1) {
      Monomial m = f.leading_term().first;
      for (const auto& [s, se] : m.exps())
        push_factor_raw(Polynomial(s), e * se);
      return;
    }
    push_factor_raw(std::move(f), e);
  }

  void push_factor_raw(Polynomial f, int e) {
    if (e == 0) return;
    for (auto& [g, ge] : den_) {
      if (g == f) {
        ge += e;
        return;
      }
    }
    den_.emplace_back(std::move(f), e);
    std::sort(den_.begin(), den_.end(), [](const auto& a, const auto& b) {
      return Polynomial::compare(a.first, b.first) < 0;
    });
  }

  void divide_by_poly(const Polynomial& p) {
    if (p.is_zero()) throw DivisionByZero();
    if (p.is_constant()) {
      num_.scale(Rational(1) / p.constant_value());
      return;
    }
    Rational scale;
    Polynomial norm = normalize_factor(p, scale);
    num_.scale(Rational(1) / scale);
    push_factor(std::move(norm), 1);
    reduce_structural();
  }

  static Factors merge_product(const Factors& a, const Factors& b) {
    Factors out = a;
    for (const auto& [f, e] : b) {
      bool found = false;
      for (auto& [g, ge] : out) {
        if (g == f) {
          ge += e;
          found = true;
          break;
        }
      }
      if (!found) out.emplace_back(f, e);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      return Polynomial::compare(x.first, y.first) < 0;
    });
    return out;
  }

  // Factorwise lcm of two denominators plus the complementary cofactors
  // each numerator has to be multiplied by.
  static Factors merge_lcm(const Factors& a, const Factors& b,
                           Polynomial& comp_a, Polynomial& comp_b) {
    Factors out = a;
    for (const auto& [f, e] : b) {
      bool found = false;
      for (auto& [g, ge] : out) {
        if (g == f) {
          if (e > ge) {
            comp_a *= g.pow(e - ge);
            ge = e;
          }
          found = true;
          break;
        }
      }
      if (!found) {
        out.emplace_back(f, e);
        comp_a *= f.pow(e);
      }
    }
    for (const auto& [f, e] : out) {
      int eb = 0;
      for (const auto& [g, ge] : b) {
        if (g == f) {
          eb = ge;
          break;
        }
      }
      if (e > eb) comp_b *= f.pow(e - eb);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      return Polynomial::compare(x.first, y.first) < 0;
    });
    return out;
  }

  void reduce_structural() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    Factors kept;
    for (auto& [f, e] : den_) {
      if (e == 0) continue;
      if (f.term_count() == 1) {
        // Canonical monomial factors are single symbols; cancel against the
        // numerator's common power of that symbol.
        Symbol s = f.leading_term().first.exps().front().first;
        int cancel = e;
        for (const auto& [m, c] : num_.terms()) {
          cancel = std::min(cancel, m.exponent(s));
          if (cancel == 0) break;
        }
        if (cancel > 0) {
          Polynomial nn;
          Monomial divisor = Monomial(s, cancel);
          for (const auto& [m, c] : num_.terms()) nn.add_term(m / divisor, c);
          num_ = std::move(nn);
          e -= cancel;
        }
      } else {
        while (e > 0) {
          auto q = poly_divide_exact(num_, f);
          if (!q) break;
          num_ = std::move(*q);
          --e;
        }
      }
      if (e > 0) kept.emplace_back(std::move(f), e);
    }
    den_ = std::move(kept);
  }

  Polynomial num_;
  Factors den_;
};

}  // namespace padepde

#endif  // PADEPDE_RATFUN_HPP_
