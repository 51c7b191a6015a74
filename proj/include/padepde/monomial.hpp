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

#ifndef PADEPDE_MONOMIAL_HPP_
#define PADEPDE_MONOMIAL_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "padepde/symbol.hpp"

namespace padepde {

// Power product with finite support; zero exponents are never stored.
// Exponent pairs are kept sorted by symbol id.
class Monomial {
 public:
  using Exps = std::vector<std::pair<Symbol, int>>;

  Monomial() = default;
  explicit Monomial(Symbol s, int e = 1) {
    if (e != 0) exps_.emplace_back(s, e);
  }

  static Monomial one() { return Monomial(); }

  static Monomial from_exps(Exps exps) {
    std::sort(exps.begin(), exps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [s, e] : exps) {
      if (e < 0) throw UsageError("negative exponent in monomial");
      if (e == 0) continue;
      if (!m.exps_.empty() && m.exps_.back().first == s) {
        m.exps_.back().second += e;
      } else {
        m.exps_.emplace_back(s, e);
      }
    }
    return m;
  }

  const Exps& exps() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [s, e] : exps_) d += e;
    return d;
  }

  template <typename Pred>
  int degree_if(Pred pred) const {
    int d = 0;
    for (const auto& [s, e] : exps_)
      if (pred(s)) d += e;
    return d;
  }

  int exponent(Symbol s) const {
    for (const auto& [sym, e] : exps_)
      if (sym == s) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    auto a = exps_.begin(), b = o.exps_.begin();
    while (a != exps_.end() || b != o.exps_.end()) {
      if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) {
        r.exps_.push_back(*a++);
      } else if (a == exps_.end() || b->first < a->first) {
        r.exps_.push_back(*b++);
      } else {
        r.exps_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    return r;
  }

  Monomial pow(int k) const {
    if (k < 0) throw UsageError("negative monomial power");
    Monomial r;
    for (const auto& [s, e] : exps_) r.exps_.emplace_back(s, e * k);
    if (k == 0) r.exps_.clear();
    return r;
  }

  bool divides(const Monomial& o) const {
    auto a = exps_.begin();
    auto b = o.exps_.begin();
    while (a != exps_.end()) {
      while (b != o.exps_.end() && b->first < a->first) ++b;
      if (b == o.exps_.end() || !(b->first == a->first) ||
          b->second < a->second)
        return false;
      ++a;
    }
    return true;
  }

  // this / o; caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    auto b = o.exps_.begin();
    for (const auto& [s, e] : exps_) {
      int sub = 0;
      while (b != o.exps_.end() && b->first < s) ++b;
      if (b != o.exps_.end() && b->first == s) sub = b->second;
      if (e - sub < 0) throw UsageError("monomial division underflow");
      if (e - sub > 0) r.exps_.emplace_back(s, e - sub);
    }
    return r;
  }

  // Componentwise min, the monomial gcd.
  static Monomial gcd(const Monomial& x, const Monomial& y) {
    Monomial r;
    auto b = y.exps_.begin();
    for (const auto& [s, e] : x.exps_) {
      while (b != y.exps_.end() && b->first < s) ++b;
      if (b != y.exps_.end() && b->first == s) {
        int m = std::min(e, b->second);
        if (m > 0) r.exps_.emplace_back(s, m);
      }
    }
    return r;
  }

  template <typename Pred>
  Monomial restricted(Pred pred) const {
    Monomial r;
    for (const auto& [s, e] : exps_)
      if (pred(s)) r.exps_.emplace_back(s, e);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

  std::string to_string(const SymbolTable& tab) const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [s, e] : exps_) {
      if (!out.empty()) out += "*";
      out += tab.name(s);
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  Exps exps_;
};

// Graded lexicographic order: total degree first; ties broken by the first
// differing symbol in creation order, where the larger exponent wins.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  auto ia = a.exps().begin();
  auto ib = b.exps().begin();
  while (ia != a.exps().end() && ib != b.exps().end()) {
    if (ia->first != ib->first) {
      // The earlier-created symbol is present in only one monomial; that
      // monomial has the larger exponent there and compares greater.
      return ib->first < ia->first ? true : false;
    }
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  if (ia == a.exps().end() && ib == b.exps().end()) return false;
  // Same degree, one exhausted: impossible unless equal degree distributed
  // differently; the one with remaining earlier symbols is greater.
  return ib != b.exps().end();
}

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_less(a, b);
  }
};

}  // namespace padepde

#endif  // PADEPDE_MONOMIAL_HPP_
