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

#ifndef PADEPDE_PARSER_HPP_
#define PADEPDE_PARSER_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padepde/equation.hpp"

namespace padepde {

// Parsed value: either a scalar (rational function of symbols) or a
// phi-expression, a sum of coef * prod_f d^{spec_f} phi terms.
struct GenTerm {
  RationalFunction coef;
  std::vector<std::map<Symbol, int>> factors;  // derivative spec per factor
};

struct ExprValue {
  bool is_equation = false;
  RationalFunction scalar;
  std::vector<GenTerm> terms;

  static ExprValue from_scalar(RationalFunction v) {
    ExprValue e;
    e.scalar = std::move(v);
    return e;
  }
  static ExprValue promoted(const ExprValue& v) {
    if (v.is_equation) return v;
    ExprValue e;
    e.is_equation = true;
    if (!v.scalar.is_zero()) e.terms.push_back(GenTerm{v.scalar, {}});
    return e;
  }
};

// Recursive-descent parser for the expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ['^' uint]
//   base   := uint | ident | 'phi' | 'd' '(' 'phi' ';' varpow+ ')'
//           | '(' expr ')'
// All multiplication is explicit except inside the d(...) variable list;
// '/' is only defined when the divisor is a scalar.
class ExprParser {
 public:
  ExprParser(const std::string& text, const SymbolTable& tab, int line = 1,
             int col_offset = 0)
      : text_(text), tab_(tab), line_(line), col_offset_(col_offset) {}

  ExprValue parse() {
    skip_ws();
    ExprValue v = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(line_, col_offset_ + static_cast<int>(pos_) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprValue parse_expr() {
    bool neg = eat('-');
    ExprValue acc = parse_term();
    if (neg) acc = negate(acc);
    while (true) {
      if (eat('+')) {
        acc = add(acc, parse_term());
      } else if (eat('-')) {
        acc = add(acc, negate(parse_term()));
      } else {
        return acc;
      }
    }
  }

  ExprValue parse_term() {
    ExprValue acc = parse_factor();
    while (true) {
      if (eat('*')) {
        acc = mul(acc, parse_factor());
      } else if (eat('/')) {
        std::size_t at = pos_;
        ExprValue rhs = parse_factor();
        if (rhs.is_equation) {
          pos_ = at;
          fail("division by a phi-expression is not defined");
        }
        if (rhs.scalar.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = divide(acc, rhs.scalar);
      } else {
        return acc;
      }
    }
  }

  ExprValue parse_factor() {
    ExprValue base = parse_base();
    if (eat('^')) {
      int k = parse_uint();
      return power(base, k);
    }
    return base;
  }

  ExprValue parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprValue v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c >= '0' && c <= '9') {
      return ExprValue::from_scalar(
          RationalFunction(Rational(BigInt(parse_digits()))));
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      std::string name = parse_ident();
      if (name == "phi") {
        ExprValue v;
        v.is_equation = true;
        v.terms.push_back(
            GenTerm{RationalFunction(Rational(1)), {std::map<Symbol, int>{}}});
        return v;
      }
      if (name == "d" && peek() == '(') return parse_derivative(start);
      auto sym = tab_.lookup(name);
      if (!sym)
        throw UnknownSymbol(line_, col_offset_ + static_cast<int>(start) + 1,
                            name);
      return ExprValue::from_scalar(RationalFunction(Polynomial(*sym)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // d(phi; var[^k] var[^k] ...) -> one derivative factor.
  ExprValue parse_derivative(std::size_t start) {
    if (!eat('(')) fail("expected '(' after d");
    std::string head = parse_ident();
    if (head != "phi") {
      pos_ = start;
      fail("only d(phi; ...) derivatives are supported");
    }
    if (!eat(';')) fail("expected ';' in d(phi; ...)");
    std::map<Symbol, int> spec;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated d(phi; ...)");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      std::size_t at = pos_;
      if (!is_ident_start(text_[pos_])) fail("expected variable name");
      std::string var = parse_ident();
      auto sym = tab_.lookup(var);
      if (!sym)
        throw UnknownSymbol(line_, col_offset_ + static_cast<int>(at) + 1,
                            var);
      int k = 1;
      if (eat('^')) k = parse_uint();
      spec[*sym] += k;
    }
    if (spec.empty()) fail("empty variable list in d(phi; ...)");
    ExprValue v;
    v.is_equation = true;
    v.terms.push_back(GenTerm{RationalFunction(Rational(1)), {spec}});
    return v;
  }

  std::string parse_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  int parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
      fail("expected a nonnegative integer exponent");
    std::string digits = parse_digits();
    if (digits.size() > 4) fail("exponent too large");
    return std::stoi(digits);
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  std::string parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  ExprValue negate(const ExprValue& v) {
    ExprValue out = v;
    if (out.is_equation) {
      for (auto& t : out.terms) t.coef = -t.coef;
    } else {
      out.scalar = -out.scalar;
    }
    return out;
  }

  ExprValue add(const ExprValue& a, const ExprValue& b) {
    if (!a.is_equation && !b.is_equation) {
      return ExprValue::from_scalar(a.scalar + b.scalar);
    }
    ExprValue pa = ExprValue::promoted(a);
    ExprValue pb = ExprValue::promoted(b);
    pa.terms.insert(pa.terms.end(), pb.terms.begin(), pb.terms.end());
    return pa;
  }

  ExprValue mul(const ExprValue& a, const ExprValue& b) {
    if (!a.is_equation && !b.is_equation)
      return ExprValue::from_scalar(a.scalar * b.scalar);
    if (!a.is_equation) return scale(b, a.scalar);
    if (!b.is_equation) return scale(a, b.scalar);
    ExprValue out;
    out.is_equation = true;
    for (const auto& ta : a.terms) {
      for (const auto& tb : b.terms) {
        GenTerm t;
        t.coef = ta.coef * tb.coef;
        t.factors = ta.factors;
        t.factors.insert(t.factors.end(), tb.factors.begin(),
                         tb.factors.end());
        out.terms.push_back(std::move(t));
      }
    }
    return out;
  }

  static ExprValue scale(const ExprValue& eq, const RationalFunction& s) {
    ExprValue out = eq;
    for (auto& t : out.terms) t.coef *= s;
    return out;
  }

  ExprValue divide(const ExprValue& a, const RationalFunction& s) {
    if (!a.is_equation)
      return ExprValue::from_scalar(a.scalar / s);
    ExprValue out = a;
    for (auto& t : out.terms) t.coef /= s;
    return out;
  }

  ExprValue power(const ExprValue& v, int k) {
    if (!v.is_equation) {
      if (k == 0)
        return ExprValue::from_scalar(RationalFunction(Rational(1)));
      RationalFunction acc = v.scalar;
      for (int n = 1; n < k; ++n) acc *= v.scalar;
      return ExprValue::from_scalar(acc);
    }
    if (k == 0) return ExprValue::from_scalar(RationalFunction(Rational(1)));
    if (k > 16) fail("phi-expression power too large");
    ExprValue acc = v;
    for (int n = 1; n < k; ++n) acc = mul(acc, v);
    return acc;
  }

  const std::string& text_;
  const SymbolTable& tab_;
  int line_;
  int col_offset_;
  std::size_t pos_ = 0;
};

inline ExprValue parse_expression(const std::string& text,
                                  const SymbolTable& tab, int line = 1,
                                  int col_offset = 0) {
  return ExprParser(text, tab, line, col_offset).parse();
}

inline RationalFunction parse_scalar(const std::string& text,
                                     const SymbolTable& tab, int line = 1,
                                     int col_offset = 0) {
  ExprValue v = parse_expression(text, tab, line, col_offset);
  if (v.is_equation)
    throw SyntaxError(line, col_offset + 1,
                      "expected a scalar expression, found phi");
  return v.scalar;
}

inline Polynomial parse_polynomial(const std::string& text,
                                   const SymbolTable& tab, int line = 1,
                                   int col_offset = 0) {
  RationalFunction v = parse_scalar(text, tab, line, col_offset);
  if (!v.is_polynomial())
    throw SyntaxError(line, col_offset + 1,
                      "expected a polynomial, found a quotient");
  return v.num();
}

// Conversion of a parsed phi-expression into the rho-form equation. The
// scalar coefficients may carry rho powers; they are split off per
// monomial. Derivative specs must mention rho variables only.
inline EulerEquation to_euler_equation(const ExprValue& v,
                                       const SymbolTable& tab,
                                       const std::vector<Symbol>& rho,
                                       int line = 1) {
  if (!v.is_equation)
    throw SyntaxError(line, 1, "equation must mention phi");
  auto rho_index = [&](Symbol s) -> int {
    for (std::size_t k = 0; k < rho.size(); ++k)
      if (rho[k] == s) return static_cast<int>(k);
    return -1;
  };
  auto is_rho = [&](Symbol s) { return tab.kind(s) == SymbolKind::kRho; };

  EulerEquation eq;
  eq.nrho = static_cast<int>(rho.size());
  for (const auto& t : v.terms) {
    std::vector<MultiIndex> betas;
    for (const auto& spec : t.factors) {
      MultiIndex beta = mi_zero(eq.nrho);
      for (const auto& [s, k] : spec) {
        int idx = rho_index(s);
        if (idx < 0)
          throw SyntaxError(line, 1,
                            "derivative variable '" + tab.name(s) +
                                "' is not a rho variable");
        beta[idx] += k;
      }
      betas.push_back(std::move(beta));
    }
    for (const auto& [f, e] : t.coef.den_factors()) {
      if (f.degree_if(is_rho) != 0)
        throw SyntaxError(line, 1,
                          "equation coefficients must not divide by rho");
    }
    // Split the rho content of the numerator per monomial.
    for (const auto& [mono, c] : t.coef.num().terms()) {
      Monomial rho_part = mono.restricted(is_rho);
      Monomial rest = mono / rho_part;
      MultiIndex rho_pow = mi_zero(eq.nrho);
      for (std::size_t k = 0; k < rho.size(); ++k)
        rho_pow[k] = rho_part.exponent(rho[k]);
      RationalFunction coef(Polynomial(rest, c));
      for (const auto& [f, e] : t.coef.den_factors())
        coef = coef / RationalFunction(f.pow(e));
      eq.terms.push_back(EulerTerm{std::move(coef), std::move(rho_pow), betas});
    }
  }
  canonicalize(eq);
  return eq;
}

// Conversion into the spacetime form: derivative specs must mention
// coordinates only and the coefficients must be free of both coordinates
// and rho variables.
inline SpacetimeEquation to_spacetime_equation(
    const ExprValue& v, const SymbolTable& tab,
    const std::vector<Symbol>& coords, int line = 1) {
  if (!v.is_equation)
    throw SyntaxError(line, 1, "equation must mention phi");
  auto coord_index = [&](Symbol s) -> int {
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k] == s) return static_cast<int>(k);
    return -1;
  };
  SpacetimeEquation eq;
  eq.dim = static_cast<int>(coords.size());
  for (const auto& t : v.terms) {
    SpacetimeTerm st;
    st.coef = t.coef;
    auto check_free = [&](const Polynomial& p) {
      for (const auto& [m, c] : p.terms())
        for (const auto& [s, e] : m.exps())
          if (tab.kind(s) == SymbolKind::kCoordinate ||
              tab.kind(s) == SymbolKind::kRho)
            throw SyntaxError(line, 1,
                              "spacetime coefficients must be parameter "
                              "expressions");
    };
    check_free(st.coef.num());
    for (const auto& [f, e] : st.coef.den_factors()) check_free(f);
    for (const auto& spec : t.factors) {
      MultiIndex alpha = mi_zero(eq.dim);
      for (const auto& [s, k] : spec) {
        int idx = coord_index(s);
        if (idx < 0)
          throw SyntaxError(line, 1,
                            "derivative variable '" + tab.name(s) +
                                "' is not a coordinate");
        alpha[idx] += k;
      }
      st.factors.push_back(std::move(alpha));
    }
    eq.terms.push_back(std::move(st));
  }
  return eq;
}

// "(j1,j2,...)" with nonnegative integers.
inline MultiIndex parse_index(const std::string& text, int nrho, int line = 1,
                              int col_offset = 0) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw SyntaxError(line, col_offset + static_cast<int>(pos) + 1, msg);
  };
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '(') fail("expected '('");
  ++pos;
  MultiIndex out;
  while (true) {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) fail("expected a nonnegative integer");
    out.push_back(std::stoi(text.substr(start, pos - start)));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      break;
    }
    fail("expected ',' or ')'");
  }
  skip();
  if (pos != text.size()) fail("unexpected trailing input");
  if (static_cast<int>(out.size()) != nrho)
    throw SyntaxError(line, col_offset + 1,
                      "index arity does not match the number of rho "
                      "variables");
  return out;
}

// "pattern -> replacement"; the pattern must be a plain monomial.
inline RewriteRule parse_rule(const std::string& name, const std::string& text,
                              const SymbolTable& tab, int line = 1,
                              int col_offset = 0) {
  auto arrow = text.find("->");
  if (arrow == std::string::npos)
    throw SyntaxError(line, col_offset + 1, "expected 'pattern -> value'");
  Polynomial lhs = parse_polynomial(text.substr(0, arrow), tab, line,
                                    col_offset);
  Polynomial rhs =
      parse_polynomial(text.substr(arrow + 2), tab, line,
                       col_offset + static_cast<int>(arrow) + 2);
  if (lhs.term_count() != 1 || lhs.leading_term().second != 1)
    throw SyntaxError(line, col_offset + 1,
                      "rewrite pattern must be a monomial with coefficient 1");
  return RewriteRule{name, lhs.leading_term().first, rhs};
}

}  // namespace padepde

#endif  // PADEPDE_PARSER_HPP_
