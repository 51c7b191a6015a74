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

#ifndef PADEPDE_NUMERIC_HPP_
#define PADEPDE_NUMERIC_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "padepde/residual.hpp"

namespace padepde {

using Cplx = std::complex<double>;

// Wave vectors and parameter values for one numeric experiment: the
// constraint relations hold to machine precision by construction, and the
// extension symbols carry consistent numeric values (i the imaginary unit,
// slam a square root of lambda, mu a sign).
struct NumericAssignment {
  std::map<Symbol, Cplx> values;
  std::vector<std::array<Cplx, 4>> waves;  // k[0] time-like, k[1..3] spatial
  std::vector<std::array<double, 4>> points;
};

namespace detail {

inline Cplx eval_ratio(const Polynomial& num, const Polynomial& den,
                       const std::map<Symbol, Cplx>& values) {
  Cplx d = den.eval<Cplx>(values);
  if (std::abs(d) < 1e-6) throw NearPole();
  return num.eval<Cplx>(values) / d;
}

}  // namespace detail

// Max relative residual of the classical field equation
// (box phi) + m^2 phi + lambda phi^3, with phi(x) = (num/den)(rho_k(x)) and
// rho_k = exp(i k_k . x). Spacetime derivatives are taken by exact symbolic
// differentiation in the rho variables (chain rule contracted with the wave
// vectors), then evaluated numerically per point.
inline double numeric_residual(const Polynomial& num, const Polynomial& den,
                               const std::vector<Symbol>& rho_syms,
                               Symbol m_sym, Symbol lambda_sym,
                               const NumericAssignment& assign) {
  const int n = static_cast<int>(rho_syms.size());
  detail::QuotientDerivatives derivs(num, den, rho_syms);

  double worst = 0.0;
  for (const auto& pt : assign.points) {
    std::map<Symbol, Cplx> values = assign.values;
    for (int k = 0; k < n; ++k) {
      Cplx phase = 0;
      for (int muc = 0; muc < 4; ++muc)
        phase += assign.waves[k][muc] * pt[muc];
      values[rho_syms[k]] = std::exp(Cplx(0, 1) * phase);
    }
    Cplx d = den.eval<Cplx>(values);
    if (std::abs(d) < 1e-6) throw NearPole();

    Cplx f = num.eval<Cplx>(values) / d;
    Cplx m2 = values.at(m_sym) * values.at(m_sym);
    Cplx lam = values.at(lambda_sym);

    // - d_t^2 phi + laplacian phi
    //   = sum_{j,k} (k_{j,0} k_{k,0} - kj.kk) rho_j rho_k f_{jk}
    //   + sum_j (k_{j,0}^2 - kj.kj) rho_j f_j
    Cplx wave_part = 0;
    double wave_scale = 0;
    for (int a = 0; a < n; ++a) {
      MultiIndex ea = mi_zero(n);
      ea[a] = 1;
      Cplx fa = derivs.numerator(ea).eval<Cplx>(values) / (d * d);
      Cplx ka2 = assign.waves[a][0] * assign.waves[a][0];
      for (int s = 1; s < 4; ++s)
        ka2 -= assign.waves[a][s] * assign.waves[a][s];
      Cplx term = ka2 * values[rho_syms[a]] * fa;
      wave_part += term;
      wave_scale = std::max(wave_scale, std::abs(term));
      for (int b = 0; b < n; ++b) {
        MultiIndex eab = ea;
        eab[b] += 1;
        Cplx fab = derivs.numerator(eab).eval<Cplx>(values) / (d * d * d);
        Cplx kab = assign.waves[a][0] * assign.waves[b][0];
        for (int s = 1; s < 4; ++s)
          kab -= assign.waves[a][s] * assign.waves[b][s];
        Cplx term2 = kab * values[rho_syms[a]] * values[rho_syms[b]] * fab;
        wave_part += term2;
        wave_scale = std::max(wave_scale, std::abs(term2));
      }
    }

    Cplx mass_term = m2 * f;
    Cplx cubic_term = lam * f * f * f;
    Cplx residual = wave_part + mass_term + cubic_term;
    double scale = std::max({wave_scale, std::abs(mass_term),
                             std::abs(cubic_term)});
    if (std::abs(residual) == 0.0) continue;
    if (scale < 1e-300) scale = 1.0;
    worst = std::max(worst, std::abs(residual) / scale);
  }
  return worst;
}

// Finite-difference evaluation of a spacetime equation on
// phi(x) = (num/den)(rho(x)), Richardson-extrapolated to O(h^4). Used to
// cross-check the transform against an entirely independent path.
class FiniteDifferenceOracle {
 public:
  FiniteDifferenceOracle(const Polynomial& num, const Polynomial& den,
                         std::vector<Symbol> rho_syms,
                         const NumericAssignment& assign)
      : num_(num), den_(den), rho_(std::move(rho_syms)), assign_(assign) {}

  Cplx phi(const std::array<double, 4>& x) const {
    std::map<Symbol, Cplx> values = assign_.values;
    for (std::size_t k = 0; k < rho_.size(); ++k) {
      Cplx phase = 0;
      for (int muc = 0; muc < 4; ++muc) phase += assign_.waves[k][muc] * x[muc];
      values[rho_[k]] = std::exp(Cplx(0, 1) * phase);
    }
    return detail::eval_ratio(num_, den_, values);
  }

  Cplx derivative(const MultiIndex& alpha, const std::array<double, 4>& x,
                  double h) const {
    Cplx coarse = derivative_step(alpha, x, h);
    Cplx fine = derivative_step(alpha, x, h / 2);
    return (4.0 * fine - coarse) / 3.0;
  }

  Cplx equation(const SpacetimeEquation& eq, const std::array<double, 4>& x,
                double h) const {
    Cplx total = 0;
    for (const auto& t : eq.terms) {
      Cplx coef = t.coef.num().eval<Cplx>(assign_.values);
      Cplx dnm = t.coef.den_expanded().eval<Cplx>(assign_.values);
      Cplx piece = coef / dnm;
      for (const auto& alpha : t.factors) {
        if (mi_is_zero(alpha))
          piece *= phi(x);
        else
          piece *= derivative(alpha, x, h);
      }
      total += piece;
    }
    return total;
  }

 private:
  Cplx derivative_step(const MultiIndex& alpha, const std::array<double, 4>& x,
                       double h) const {
    int muc = -1;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if (alpha[k] > 0) {
        muc = static_cast<int>(k);
        break;
      }
    if (muc < 0) return phi(x);
    MultiIndex lower = alpha;
    lower[muc] -= 1;
    std::array<double, 4> xp = x, xm = x;
    xp[muc] += h;
    xm[muc] -= h;
    return (derivative_step(lower, xp, h) - derivative_step(lower, xm, h)) /
           (2 * h);
  }

  const Polynomial& num_;
  const Polynomial& den_;
  std::vector<Symbol> rho_;
  const NumericAssignment& assign_;
};

// ---- Samplers -------------------------------------------------------------

// Recipe for a constraint-satisfying random assignment. shell_shift is the
// alpha in k_{j,0}^2 = kj^2 + alpha m^2 (-1 for the first family, +2 for
// the second); product_shift, when set, additionally enforces
// k10 k20 - k1.k2 = beta m^2 by solving for k_{1,1} and k_{1,0}.
struct SamplerRecipe {
  int nwaves = 1;
  double shell_shift = -1.0;
  std::optional<double> product_shift;
  bool lambda_zero = false;
};

struct SamplerSymbols {
  Symbol m, lambda, i, mu, slam;
  std::vector<Symbol> coeffs;              // c1 or c10, c01
  std::optional<Symbol> k10, k20, k1sq, k2sq, k1k2;
};

inline NumericAssignment sample_assignment(const SamplerRecipe& recipe,
                                           const SamplerSymbols& syms,
                                           std::mt19937_64& rng,
                                           int npoints) {
  std::uniform_real_distribution<double> U(0.6, 1.4);
  std::uniform_real_distribution<double> Uk(-1.2, 1.2);
  std::uniform_real_distribution<double> Up(-0.8, 0.8);
  std::uniform_int_distribution<int> sign(0, 1);

  for (int attempt = 0; attempt < 64; ++attempt) {
    NumericAssignment out;
    double m = U(rng);
    double lam = recipe.lambda_zero ? 0.0 : U(rng);
    out.values[syms.m] = m;
    out.values[syms.lambda] = lam;
    out.values[syms.i] = Cplx(0, 1);
    out.values[syms.mu] = sign(rng) ? 1.0 : -1.0;
    out.values[syms.slam] = std::sqrt(Cplx(lam));
    for (Symbol c : syms.coeffs) out.values[c] = U(rng);

    std::vector<std::array<Cplx, 4>> waves(recipe.nwaves);
    std::array<std::array<double, 3>, 2> kvec{};
    for (int w = 0; w < recipe.nwaves; ++w)
      for (int s = 0; s < 3; ++s) kvec[w][s] = Uk(rng);

    auto dot3 = [&](int a, int b) {
      double d = 0;
      for (int s = 0; s < 3; ++s) d += kvec[a][s] * kvec[b][s];
      return d;
    };

    double m2 = m * m;
    double alpha = recipe.shell_shift;
    if (!recipe.product_shift) {
      for (int w = 0; w < recipe.nwaves; ++w) {
        Cplx k0 = std::sqrt(Cplx(dot3(w, w) + alpha * m2));
        if (sign(rng)) k0 = -k0;
        waves[w] = {k0, kvec[w][0], kvec[w][1], kvec[w][2]};
      }
    } else {
      // Enforce both shells plus k10 k20 - k1.k2 = beta m^2 by solving the
      // quadratic for k11 with k10 eliminated through the product relation.
      double beta = *recipe.product_shift;
      Cplx k20 = std::sqrt(Cplx(dot3(1, 1) + alpha * m2));
      if (sign(rng)) k20 = -k20;
      double s = kvec[0][1] * kvec[1][1] + kvec[0][2] * kvec[1][2];
      double t = kvec[0][1] * kvec[0][1] + kvec[0][2] * kvec[0][2];
      double k21 = kvec[1][0];
      Cplx a = k21 * k21 - k20 * k20;
      Cplx b = 2.0 * k21 * (s + beta * m2);
      Cplx c = (s + beta * m2) * (s + beta * m2) - (t + alpha * m2) * k20 * k20;
      if (std::abs(a) < 1e-8) continue;
      Cplx disc = std::sqrt(b * b - 4.0 * a * c);
      Cplx k11 = (-b + (sign(rng) ? disc : -disc)) / (2.0 * a);
      Cplx k1k2 = k11 * k21 + s;
      Cplx k10 = (k1k2 + beta * m2) / k20;
      waves[0] = {k10, k11, kvec[0][1], kvec[0][2]};
      waves[1] = {k20, k21, kvec[1][1], kvec[1][2]};
    }

    auto cdot3 = [&](int a, int b) {
      Cplx d = 0;
      for (int s3 = 1; s3 < 4; ++s3) d += waves[a][s3] * waves[b][s3];
      return d;
    };
    bool ok = true;
    for (int w = 0; w < recipe.nwaves; ++w) {
      Cplx gap = waves[w][0] * waves[w][0] - cdot3(w, w) - alpha * m2;
      if (std::abs(gap) > 1e-10) ok = false;
    }
    if (recipe.product_shift && recipe.nwaves == 2) {
      Cplx gap = waves[0][0] * waves[1][0] - cdot3(0, 1) -
                 *recipe.product_shift * m2;
      if (std::abs(gap) > 1e-10) ok = false;
    }
    if (!ok) continue;

    if (syms.k10) out.values[*syms.k10] = waves[0][0];
    if (syms.k1sq) out.values[*syms.k1sq] = cdot3(0, 0);
    if (recipe.nwaves == 2) {
      if (syms.k20) out.values[*syms.k20] = waves[1][0];
      if (syms.k2sq) out.values[*syms.k2sq] = cdot3(1, 1);
      if (syms.k1k2) out.values[*syms.k1k2] = cdot3(0, 1);
    }
    out.waves = std::move(waves);
    for (int p = 0; p < npoints; ++p)
      out.points.push_back({Up(rng), Up(rng), Up(rng), Up(rng)});
    return out;
  }
  throw MathError("failed to sample a constraint-satisfying assignment");
}

}  // namespace padepde

#endif  // PADEPDE_NUMERIC_HPP_
