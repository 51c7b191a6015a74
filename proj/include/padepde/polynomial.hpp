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

#ifndef PADEPDE_POLYNOMIAL_HPP_
#define PADEPDE_POLYNOMIAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padepde/monomial.hpp"
#include "padepde/rational.hpp"

namespace padepde {

// Canonical multivariate polynomial over exact rationals: a term map keyed
// by monomial in the global graded-lex order, never storing zero
// coefficients. Two polynomials are equal iff their term maps are.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Polynomial() = default;
  /* implicit */ Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial::one(), c);
  }
  /* implicit */ Polynomial(int c) : Polynomial(Rational(c)) {}
  explicit Polynomial(Symbol s) { terms_.emplace(Monomial(s), Rational(1)); }
  Polynomial(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.emplace(m, c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  // Constant value; zero polynomial yields 0.
  Rational constant_value() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  template <typename Pred>
  int degree_if(Pred pred) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_if(pred));
    return d;
  }

  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw MathError("leading term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  Polynomial& scale(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
  }
  friend Polynomial operator*(Polynomial a, const Rational& c) {
    return a.scale(c);
  }
  friend Polynomial operator*(const Rational& c, Polynomial a) {
    return a.scale(c);
  }

  Polynomial pow(int k) const {
    if (k < 0) throw UsageError("negative polynomial power");
    Polynomial r(Rational(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = (k >>= 1) > 0 ? base * base : base;
    }
    return r;
  }

  Polynomial derivative(Symbol s) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      int e = m.exponent(s);
      if (e == 0) continue;
      r.add_term(m / Monomial(s), c * e);
    }
    return r;
  }

  bool contains(Symbol s) const {
    for (const auto& [m, c] : terms_)
      if (m.exponent(s) > 0) return true;
    return false;
  }

  // Positive rational c such that (*this)/c has coprime integer
  // coefficients; 0 for the zero polynomial.
  Rational content() const {
    if (terms_.empty()) return Rational(0);
    BigInt num_gcd = 0;
    BigInt den_lcm = 1;
    for (const auto& [m, c] : terms_) {
      BigInt n = numerator(c);
      if (n < 0) n = -n;
      num_gcd = boost::multiprecision::gcd(num_gcd, n);
      const BigInt& d = denominator(c);
      den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
    }
    return Rational(num_gcd, den_lcm);
  }

  // Splits every monomial into the part matched by pred (key) and the rest
  // (grouped remainder polynomial). Used for grading in the rho variables.
  template <typename Pred>
  std::map<Monomial, Polynomial, GrlexLess> collect_by(Pred pred) const {
    std::map<Monomial, Polynomial, GrlexLess> out;
    for (const auto& [m, c] : terms_) {
      Monomial key = m.restricted(pred);
      Monomial rest = m / key;
      out[key].add_term(rest, c);
    }
    return out;
  }

  template <typename T, typename Map>
  T eval(const Map& values) const {
    T acc{};
    for (const auto& [m, c] : terms_) {
      T t = static_cast<T>(static_cast<double>(numerator(c)) /
                           static_cast<double>(denominator(c)));
      for (const auto& [s, e] : m.exps()) {
        auto it = values.find(s);
        if (it == values.end())
          throw UsageError("numeric evaluation: unassigned symbol");
        T base = it->second;
        for (int i = 0; i < e; ++i) t *= base;
      }
      acc += t;
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  // Total order for canonical factor lists: compare term maps from the
  // leading end.
  static int compare(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms_.rbegin();
    auto ib = b.terms_.rbegin();
    for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
      if (ia->first != ib->first)
        return grlex_less(ia->first, ib->first) ? -1 : 1;
      if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.terms_.rend()) return 1;
    if (ib != b.terms_.rend()) return -1;
    return 0;
  }

  // Canonical textual form: terms in descending graded-lex order, explicit
  // '*', '^' powers, rational coefficients as p/q.
  std::string to_string(const SymbolTable& tab) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Monomial& m = it->first;
      Rational c = it->second;
      bool neg = c < 0;
      if (neg) c = -c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (m.is_one()) {
        out += padepde::to_string(c);
      } else {
        if (c != 1) out += padepde::to_string(c) + "*";
        out += m.to_string(tab);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

// Exact quotient: q with q * divisor == dividend, or nullopt when the
// division does not come out even. Throws on a zero divisor.
inline std::optional<Polynomial> poly_divide_exact(const Polynomial& dividend,
                                                   const Polynomial& divisor) {
  if (divisor.is_zero()) throw ZeroDivisor();
  Polynomial q;
  Polynomial r = dividend;
  auto [dm, dc] = divisor.leading_term();
  while (!r.is_zero()) {
    auto [rm, rc] = r.leading_term();
    if (!dm.divides(rm)) return std::nullopt;
    Monomial t = rm / dm;
    Rational c = rc / dc;
    q.add_term(t, c);
    r -= Polynomial(t, c) * divisor;
  }
  return q;
}

}  // namespace padepde

#endif  // PADEPDE_POLYNOMIAL_HPP_
