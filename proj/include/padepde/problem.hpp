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

#ifndef PADEPDE_PROBLEM_HPP_
#define PADEPDE_PROBLEM_HPP_

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padepde/parser.hpp"

namespace padepde {

// A fully resolved problem: symbols, extension rules, equation, named
// constraints, seeds, free coefficients, and run parameters. Built from the
// `[section]` / `key = value` problem-file format (see docs/problem-format.md).
struct Problem {
  std::string name;
  std::shared_ptr<SymbolTable> symbols;
  std::vector<Symbol> rho;
  std::vector<Symbol> coords;
  RewriteSystem extensions;
  std::vector<RewriteRule> constraints;

  std::optional<EulerEquation> rho_equation;
  std::optional<SpacetimeEquation> spacetime_equation;
  AnsatzDefinition ansatz;

  std::vector<RationalFunction> seed_candidates;
  RationalFunction seed_use;
  std::vector<std::pair<MultiIndex, Symbol>> frees;

  int order = 0;
  int L = 0;
  int M = 0;
  std::vector<std::string> apply_names;
  std::vector<std::string> verify_names;

  const RewriteRule* find_rule(const std::string& rule_name) const {
    for (const auto& r : constraints)
      if (r.name == rule_name) return &r;
    return nullptr;
  }

  RewriteSystem rules_from(const std::vector<std::string>& names) const {
    RewriteSystem rs;
    for (const auto& n : names) {
      const RewriteRule* r = find_rule(n);
      if (!r) throw UsageError("unknown constraint rule '" + n + "'");
      rs.add(*r);
    }
    return rs;
  }

  // The equation the pipeline works on: the rho form if given, otherwise
  // the transformed spacetime equation; in both cases with the `apply`
  // constraints already substituted into the coefficients.
  EulerEquation reduced_equation() const {
    EulerEquation eq;
    if (rho_equation) {
      eq = *rho_equation;
    } else if (spacetime_equation) {
      eq = transform(*spacetime_equation, ansatz, *symbols);
    } else {
      throw UsageError("problem has no equation");
    }
    RewriteSystem pre = rules_from(apply_names);
    return reduce_equation(eq, pre.merged(extensions));
  }
};

namespace detail {

struct RawLine {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
  int value_col = 0;
};

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Parses a problem from text. Collects every located error before giving
// up so a bad file reports all its problems at once.
inline Problem parse_problem(const std::string& text,
                             const std::string& name = "<problem>") {
  Problem pb;
  pb.name = name;
  pb.symbols = std::make_shared<SymbolTable>();
  SymbolTable& tab = *pb.symbols;

  std::vector<detail::RawLine> lines;
  {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int ln = 0;
    std::vector<std::string> errors;
    while (std::getline(in, line)) {
      ++ln;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::string t = detail::trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') {
          errors.push_back(name + ":" + std::to_string(ln) +
                           ": malformed section header");
          continue;
        }
        section = t.substr(1, t.size() - 2);
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos || section.empty()) {
        errors.push_back(name + ":" + std::to_string(ln) +
                         ": expected 'key = value' inside a section");
        continue;
      }
      detail::RawLine rl;
      rl.section = section;
      rl.key = detail::trim(line.substr(0, eq));
      rl.value = detail::trim(line.substr(eq + 1));
      rl.line = ln;
      rl.value_col = static_cast<int>(eq) + 1;
      lines.push_back(std::move(rl));
    }
    if (!errors.empty()) {
      std::string joined;
      for (const auto& e : errors) joined += e + "\n";
      throw UsageError(joined);
    }
  }

  std::vector<std::string> errors;
  auto note = [&](int ln, const std::string& msg) {
    errors.push_back(name + ":" + std::to_string(ln) + ": " + msg);
  };

  // Pass 1: declare all symbols in file order; the declaration order is
  // the term order, so it is part of the problem's meaning.
  for (const auto& rl : lines) {
    try {
      if (rl.section == "symbols") {
        if (rl.key == "parameters") {
          for (const auto& n : detail::split_names(rl.value))
            tab.intern(n, SymbolKind::kParameter);
        } else if (rl.key == "rhos") {
          for (const auto& n : detail::split_names(rl.value)) {
            Symbol s = tab.intern(n, SymbolKind::kRho);
            pb.rho.push_back(s);
          }
        } else if (rl.key.rfind("extension", 0) == 0) {
          std::string pat = detail::trim(rl.key.substr(9));
          auto caret = pat.find('^');
          std::string sym_name =
              detail::trim(caret == std::string::npos ? pat
                                                      : pat.substr(0, caret));
          if (sym_name.empty()) {
            note(rl.line, "extension declaration needs a symbol name");
            continue;
          }
          tab.intern(sym_name, SymbolKind::kExtension);
        } else {
          note(rl.line, "unknown [symbols] entry '" + rl.key + "'");
        }
      } else if (rl.section == "ansatz" && rl.key == "coordinates") {
        for (const auto& n : detail::split_names(rl.value)) {
          Symbol s = tab.intern(n, SymbolKind::kCoordinate);
          pb.coords.push_back(s);
        }
      }
    } catch (const UsageError& e) {
      note(rl.line, e.what());
    }
  }

  // Pass 2: everything that parses expressions.
  std::optional<detail::RawLine> rho_eq_line, st_eq_line;
  for (const auto& rl : lines) {
    try {
      if (rl.section == "symbols") {
        if (rl.key.rfind("extension", 0) == 0) {
          std::string pat = detail::trim(rl.key.substr(9));
          RewriteRule rule = parse_rule(pat, pat + " -> " + rl.value, tab,
                                        rl.line, 0);
          rule.name = pat;
          pb.extensions.add(std::move(rule));
        }
      } else if (rl.section == "equation") {
        if (rl.key == "rho") {
          rho_eq_line = rl;
        } else if (rl.key == "spacetime") {
          st_eq_line = rl;
        } else {
          note(rl.line, "unknown [equation] entry '" + rl.key + "'");
        }
      } else if (rl.section == "ansatz") {
        if (rl.key == "coordinates") {
          // handled in pass 1
        } else if (rl.key.rfind("d(", 0) == 0 && rl.key.back() == ')') {
          std::string inner = rl.key.substr(2, rl.key.size() - 3);
          auto semi = inner.find(';');
          if (semi == std::string::npos) {
            note(rl.line, "expected d(rho; coordinate)");
            continue;
          }
          std::string rname = detail::trim(inner.substr(0, semi));
          std::string cname = detail::trim(inner.substr(semi + 1));
          auto rsym = tab.lookup(rname);
          auto csym = tab.lookup(cname);
          if (!rsym || tab.kind(*rsym) != SymbolKind::kRho) {
            note(rl.line, "'" + rname + "' is not a rho variable");
            continue;
          }
          if (!csym || tab.kind(*csym) != SymbolKind::kCoordinate) {
            note(rl.line, "'" + cname + "' is not a coordinate");
            continue;
          }
          RationalFunction f =
              parse_scalar(rl.value, tab, rl.line, rl.value_col);
          if (!f.is_polynomial())
            throw UnsupportedAnsatz(
                "derivative table entries must be polynomial in rho");
          int r = -1, c = -1;
          for (std::size_t k = 0; k < pb.rho.size(); ++k)
            if (pb.rho[k] == *rsym) r = static_cast<int>(k);
          for (std::size_t k = 0; k < pb.coords.size(); ++k)
            if (pb.coords[k] == *csym) c = static_cast<int>(k);
          pb.ansatz.table[{c, r}] = f.num();
        } else {
          note(rl.line, "unknown [ansatz] entry '" + rl.key + "'");
        }
      } else if (rl.section == "constraints") {
        pb.constraints.push_back(
            parse_rule(rl.key, rl.value, tab, rl.line, rl.value_col));
      } else if (rl.section == "seeds") {
        if (rl.key == "candidates") {
          std::stringstream ss(rl.value);
          std::string part;
          while (std::getline(ss, part, ';')) {
            part = detail::trim(part);
            if (part.empty()) continue;
            pb.seed_candidates.push_back(
                parse_scalar(part, tab, rl.line, rl.value_col));
          }
        } else if (rl.key == "use") {
          pb.seed_use = parse_scalar(rl.value, tab, rl.line, rl.value_col);
        } else {
          note(rl.line, "unknown [seeds] entry '" + rl.key + "'");
        }
      } else if (rl.section == "frees") {
        auto sym = tab.lookup(rl.key);
        if (!sym || tab.kind(*sym) != SymbolKind::kParameter) {
          note(rl.line,
               "free coefficient '" + rl.key + "' is not a parameter");
          continue;
        }
        MultiIndex j = parse_index(rl.value, static_cast<int>(pb.rho.size()),
                                   rl.line, rl.value_col);
        pb.frees.emplace_back(std::move(j), *sym);
      } else if (rl.section == "run") {
        if (rl.key == "order") {
          pb.order = std::stoi(rl.value);
        } else if (rl.key == "L") {
          pb.L = std::stoi(rl.value);
        } else if (rl.key == "M") {
          pb.M = std::stoi(rl.value);
        } else if (rl.key == "apply") {
          pb.apply_names = detail::split_names(rl.value);
        } else if (rl.key == "verify") {
          pb.verify_names = detail::split_names(rl.value);
        } else {
          note(rl.line, "unknown [run] entry '" + rl.key + "'");
        }
      } else if (rl.section != "symbols" && rl.section != "equation") {
        note(rl.line, "unknown section '[" + rl.section + "]'");
      }
    } catch (const UsageError& e) {
      note(rl.line, e.what());
    } catch (const std::exception& e) {
      note(rl.line, e.what());
    }
  }

  if (rho_eq_line) {
    try {
      ExprValue v = parse_expression(rho_eq_line->value, tab,
                                     rho_eq_line->line,
                                     rho_eq_line->value_col);
      pb.rho_equation =
          to_euler_equation(v, tab, pb.rho, rho_eq_line->line);
    } catch (const UsageError& e) {
      note(rho_eq_line->line, e.what());
    }
  }
  if (st_eq_line) {
    try {
      ExprValue v = parse_expression(st_eq_line->value, tab, st_eq_line->line,
                                     st_eq_line->value_col);
      pb.spacetime_equation =
          to_spacetime_equation(v, tab, pb.coords, st_eq_line->line);
    } catch (const UsageError& e) {
      note(st_eq_line->line, e.what());
    }
  }
  pb.ansatz.rho = pb.rho;
  pb.ansatz.coords = pb.coords;

  if (!pb.rho_equation && !pb.spacetime_equation)
    errors.push_back(name + ": no [equation] given");
  if (pb.rho.empty()) errors.push_back(name + ": no rho variables declared");
  for (const auto& nm : pb.apply_names)
    if (!pb.find_rule(nm))
      errors.push_back(name + ": unknown apply rule '" + nm + "'");
  for (const auto& nm : pb.verify_names)
    if (!pb.find_rule(nm))
      errors.push_back(name + ": unknown verify rule '" + nm + "'");

  if (!errors.empty()) {
    std::string joined;
    for (const auto& e : errors) joined += e + "\n";
    throw UsageError(joined);
  }
  return pb;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path);
}

}  // namespace padepde

#endif  // PADEPDE_PROBLEM_HPP_
