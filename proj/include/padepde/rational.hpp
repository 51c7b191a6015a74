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

#ifndef PADEPDE_RATIONAL_HPP_
#define PADEPDE_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

#include "padepde/errors.hpp"

namespace padepde {

// Arbitrary-precision exact arithmetic. cpp_rational keeps the canonical
// form required here: gcd(num, den) = 1, den > 0, zero is 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  return Rational(num, den);
}

// gcd on positive rationals: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), the
// largest rational dividing both to integers.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return b < 0 ? Rational(-b) : b;
  if (b == 0) return a < 0 ? Rational(-a) : a;
  BigInt an = numerator(a), ad = denominator(a);
  BigInt bn = numerator(b), bd = denominator(b);
  if (an < 0) an = -an;
  if (bn < 0) bn = -bn;
  BigInt g = boost::multiprecision::gcd(an * bd, bn * ad);
  return Rational(g, ad * bd);
}

}  // namespace padepde

#endif  // PADEPDE_RATIONAL_HPP_
