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

#ifndef PADEPDE_SYMBOL_HPP_
#define PADEPDE_SYMBOL_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "padepde/errors.hpp"

namespace padepde {

enum class SymbolKind {
  kParameter,   // model constants and free coefficients (m, lambda, c1, ...)
  kRho,         // the ansatz variables the series expands in
  kExtension,   // adjoined algebraic symbols with a defining rewrite rule
  kCoordinate,  // spacetime coordinates, only used by the transform stage
};

inline const char* kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::kParameter: return "parameter";
    case SymbolKind::kRho: return "rho";
    case SymbolKind::kExtension: return "extension";
    case SymbolKind::kCoordinate: return "coordinate";
  }
  return "?";
}

// Interned symbol handle. Creation order doubles as the lexicographic
// significance in the global term order: symbols created earlier compare as
// more significant.
struct Symbol {
  std::uint32_t id = 0;
  friend bool operator==(Symbol a, Symbol b) { return a.id == b.id; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id != b.id; }
  friend bool operator<(Symbol a, Symbol b) { return a.id < b.id; }
};

// Interner. Names are unique per table; the kind is fixed at creation and
// re-interning the same name with a different kind is an error. Creation is
// serialized; all other access is read-only after setup.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(const SymbolTable&) = delete;
  SymbolTable& operator=(const SymbolTable&) = delete;

  Symbol intern(const std::string& name, SymbolKind kind) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      const Entry& e = entries_[it->second];
      if (e.kind != kind) {
        throw UsageError("symbol '" + name + "' already declared as " +
                         kind_name(e.kind));
      }
      return Symbol{it->second};
    }
    std::uint32_t id = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back(Entry{name, kind});
    by_name_.emplace(name, id);
    return Symbol{id};
  }

  std::optional<Symbol> lookup(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return Symbol{it->second};
  }

  const std::string& name(Symbol s) const { return entries_.at(s.id).name; }
  SymbolKind kind(Symbol s) const { return entries_.at(s.id).kind; }
  bool is_rho(Symbol s) const { return kind(s) == SymbolKind::kRho; }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string name;
    SymbolKind kind;
  };
  std::vector<Entry> entries_;
  std::map<std::string, std::uint32_t> by_name_;
  std::mutex mu_;
};

}  // namespace padepde

#endif  // PADEPDE_SYMBOL_HPP_
