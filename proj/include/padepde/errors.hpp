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

#ifndef PADEPDE_ERRORS_HPP_
#define PADEPDE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace padepde {

// Mathematical failures: the computation is well-posed but has no answer of
// the requested shape (exit code 2 at the CLI).
struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad syntax, undeclared symbols, invalid options
// (exit code 1 at the CLI).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDivisor : MathError {
  ZeroDivisor() : MathError("division by the zero polynomial") {}
};

struct DivisionByZero : MathError {
  DivisionByZero() : MathError("division by a zero value") {}
};

struct NonTerminating : MathError {
  explicit NonTerminating(const std::string& what) : MathError(what) {}
};

struct ZeroDenominator : MathError {
  explicit ZeroDenominator(const std::string& what =
                               "denominator reduces to zero under the active "
                               "rewrite rules")
      : MathError(what) {}
};

struct DegenerateDenominator : MathError {
  DegenerateDenominator()
      : MathError("collapsed denominator is identically zero") {}
};

// Raised by the order-by-order series solver when the equation at some index
// has no linear part but a nonzero inhomogeneity: no series solution exists
// with the given seed and free coefficients, and a constraint is needed.
struct Obstruction : MathError {
  explicit Obstruction(std::vector<int> index, const std::string& what)
      : MathError(what), index(std::move(index)) {}
  std::vector<int> index;
};

struct SingularSystem : MathError {
  explicit SingularSystem(const std::string& what) : MathError(what) {}
};

struct InsufficientOrder : MathError {
  explicit InsufficientOrder(const std::string& what) : MathError(what) {}
};

struct NoCandidates : MathError {
  NoCandidates() : MathError("no seed candidate verifies to zero") {}
};

struct UnsupportedAnsatz : UsageError {
  explicit UnsupportedAnsatz(const std::string& what) : UsageError(what) {}
};

struct UnsupportedEquation : UsageError {
  explicit UnsupportedEquation(const std::string& what) : UsageError(what) {}
};

struct NearPole : MathError {
  NearPole() : MathError("denominator too close to zero at a sample point") {}
};

struct SyntaxError : UsageError {
  SyntaxError(int line, int col, const std::string& what)
      : UsageError("syntax error at " + std::to_string(line) + ":" +
                   std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct UnknownSymbol : UsageError {
  UnknownSymbol(int line, int col, const std::string& name)
      : UsageError("unknown symbol '" + name + "' at " + std::to_string(line) +
                   ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

}  // namespace padepde

#endif  // PADEPDE_ERRORS_HPP_
