// Copyright 2026 The flatcheb Authors
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

#ifndef FLATCHEB_CHEBPOLY_HPP
#define FLATCHEB_CHEBPOLY_HPP

#include <vector>

#include "flatcheb/exactpoly.hpp"
#include "flatcheb/numeric.hpp"

namespace flatcheb {

/// Chebyshev-to-monomial conversion is ill-conditioned; in double precision it
/// keeps ~1e-8 accuracy up to this degree. Above it, callers must use the
/// exact-rational conversion.
inline constexpr int kMonomialFloatDegreeCap = 60;

/// First-kind Chebyshev polynomial T_n(x) by the three-term recurrence.
double cheb_T(int n, double x);

/// Second-kind Chebyshev polynomial U_n(x): U_0 = 1, U_1 = 2x, same recurrence.
double cheb_U(int n, double x);

/// A finite expansion sum_n coeffs[n] * T_n(x / scale) on the base interval
/// [-scale, scale]. Values are immutable after construction; every operation
/// on them is pure.
struct ChebSeries {
  double scale = 1.0;
  std::vector<double> coeffs;

  ChebSeries() : coeffs{0.0} {}
  ChebSeries(double scale_, std::vector<double> coeffs_);

  /// Highest index with a nonzero coefficient (trailing zeros are retained in
  /// storage but do not count toward the degree).
  int degree() const;
};

/// Evaluate a series at x. Inside the base interval this is a double-precision
/// Clenshaw recurrence; outside, terms grow like (|x|/t + sqrt((x/t)^2-1))^n and
/// cancel violently, so the accumulation runs in 256-bit floats.
double series_eval(const ChebSeries& s, double x);

/// Extended-precision evaluation (always 256-bit); building block for products
/// that must stay accurate far outside the base interval.
Float256 series_eval_ext(const ChebSeries& s, const Float256& x);

/// Exact product of two series on the same scale, collecting T_{m+n} and
/// T_{|m-n|} terms with weight 1/2. Result degree is deg(a) + deg(b).
ChebSeries series_mul(const ChebSeries& a, const ChebSeries& b);

/// Dense monomial-basis polynomial c_0 + c_1 x + ... over doubles.
struct MonoPoly {
  std::vector<double> coeffs;

  MonoPoly() : coeffs{0.0} {}
  explicit MonoPoly(std::vector<double> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(0.0);
  }

  int degree() const;
  double eval(double x) const;
  Float256 eval_ext(const Float256& x) const;
};

/// Monomial expansion of a series using the closed-form coefficients of T_n,
/// scaled by scale^-(n-2k). Throws above kMonomialFloatDegreeCap; use
/// to_monomial_exact past that.
MonoPoly to_monomial(const ChebSeries& s);

/// Exact-rational monomial expansion of sum_n coeffs[n] T_n(x/scale).
RatPoly to_monomial_exact(const Rat& scale, const std::vector<Rat>& coeffs);

/// Exact-rational Chebyshev coefficient product (same bookkeeping as
/// series_mul, over Rat).
std::vector<Rat> cheb_coeff_mul_exact(const std::vector<Rat>& a, const std::vector<Rat>& b);

/// Chebyshev coefficients (on scale `scale`) of a monomial-basis polynomial.
/// This direction of the change of basis is well conditioned.
std::vector<double> monomial_to_cheb(const MonoPoly& p, double scale);

}  // namespace flatcheb

#endif  // FLATCHEB_CHEBPOLY_HPP
