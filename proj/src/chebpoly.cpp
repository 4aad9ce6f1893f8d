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

#include "flatcheb/chebpoly.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace flatcheb {

double cheb_T(int n, double x) {
  if (n < 0) throw std::invalid_argument("cheb_T: n < 0");
  if (n == 0) return 1.0;
  double t0 = 1.0, t1 = x;
  for (int i = 2; i <= n; ++i) {
    double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double cheb_U(int n, double x) {
  if (n < 0) throw std::invalid_argument("cheb_U: n < 0");
  if (n == 0) return 1.0;
  double u0 = 1.0, u1 = 2.0 * x;
  for (int i = 2; i <= n; ++i) {
    double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

ChebSeries::ChebSeries(double scale_, std::vector<double> coeffs_)
    : scale(scale_), coeffs(std::move(coeffs_)) {
  if (!(scale > 0.0)) throw std::invalid_argument("ChebSeries: scale must be positive");
  if (coeffs.empty()) throw std::invalid_argument("ChebSeries: empty coefficient vector");
}

int ChebSeries::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[i] != 0.0) return i;
  return 0;
}

namespace {

template <class F>
F clenshaw(const std::vector<double>& a, const F& y) {
  // sum a_n T_n(y) with the full a_0 (no halving convention).
  F b1 = 0, b2 = 0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
    F bk = 2 * y * b1 - b2 + a[k];
    b2 = b1;
    b1 = bk;
  }
  return y * b1 - b2 + a[0];
}

}  // namespace

double series_eval(const ChebSeries& s, double x) {
  double y = x / s.scale;
  if (std::abs(y) <= 1.0) return clenshaw<double>(s.coeffs, y);
  Float256 v = clenshaw<Float256>(s.coeffs, Float256(y));
  if (!boost::multiprecision::isfinite(v))
    throw std::overflow_error("series_eval: extended-precision accumulation overflowed");
  double out = v.convert_to<double>();
  if (!std::isfinite(out))
    throw std::overflow_error("series_eval: result exceeds double range");
  return out;
}

Float256 series_eval_ext(const ChebSeries& s, const Float256& x) {
  Float256 y = x / Float256(s.scale);
  Float256 v = clenshaw<Float256>(s.coeffs, y);
  if (!boost::multiprecision::isfinite(v))
    throw std::overflow_error("series_eval_ext: accumulation overflowed");
  return v;
}

ChebSeries series_mul(const ChebSeries& a, const ChebSeries& b) {
  if (a.scale != b.scale)
    throw std::invalid_argument("series_mul: scale mismatch");
  std::vector<double> r(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (size_t m = 0; m < a.coeffs.size(); ++m) {
    if (a.coeffs[m] == 0.0) continue;
    for (size_t n = 0; n < b.coeffs.size(); ++n) {
      double w = 0.5 * a.coeffs[m] * b.coeffs[n];
      if (w == 0.0) continue;
      r[m + n] += w;
      r[m > n ? m - n : n - m] += w;
    }
  }
  return ChebSeries(a.scale, std::move(r));
}

std::vector<Rat> cheb_coeff_mul_exact(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
  for (size_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0) continue;
    for (size_t n = 0; n < b.size(); ++n) {
      Rat w = a[m] * b[n] / 2;
      r[m + n] += w;
      r[m > n ? m - n : n - m] += w;
    }
  }
  return r;
}

int MonoPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[i] != 0.0) return i;
  return 0;
}

double MonoPoly::eval(double x) const {
  double acc = 0.0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

Float256 MonoPoly::eval_ext(const Float256& x) const {
  Float256 acc = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

namespace {

// Monomial coefficients of T_n: the coefficient of x^{n-2k} is
// (n/2) (-1)^k (n-k-1)! / (k! (n-2k)!) * 2^{n-2k}, for n > 0.
// Computed exactly; callers scale and convert as needed.
std::vector<Rat> cheb_T_monomial_exact(int n) {
  if (n == 0) return {Rat(1)};
  std::vector<Rat> c(n + 1, Rat(0));
  for (int k = 0; k <= n / 2; ++k) {
    Int num = factorial(n - k - 1);
    Int den = factorial(k) * factorial(n - 2 * k);
    Rat coef = Rat(n) / 2 * Rat(num, den) * Rat(Int(1) << (n - 2 * k));
    if (k % 2 == 1) coef = -coef;
    c[n - 2 * k] = coef;
  }
  return c;
}

}  // namespace

MonoPoly to_monomial(const ChebSeries& s) {
  int d = s.degree();
  if (d > kMonomialFloatDegreeCap)
    throw std::domain_error(
        "to_monomial: degree exceeds the float-mode cap; use to_monomial_exact");
  std::vector<Rat> rs(d + 1);
  Rat t = rat_from_double(s.scale);
  for (int i = 0; i <= d; ++i) rs[i] = rat_from_double(s.coeffs[i]);
  RatPoly exact = to_monomial_exact(t, rs);
  std::vector<double> out(exact.c.size());
  for (size_t i = 0; i < exact.c.size(); ++i) out[i] = rat_to_double(exact.c[i]);
  return MonoPoly(std::move(out));
}

RatPoly to_monomial_exact(const Rat& scale, const std::vector<Rat>& coeffs) {
  if (scale <= 0) throw std::invalid_argument("to_monomial_exact: scale must be positive");
  RatPoly out;
  out.c.assign(coeffs.size(), Rat(0));
  // Powers of 1/scale.
  std::vector<Rat> inv_pow(coeffs.size(), Rat(1));
  for (size_t i = 1; i < inv_pow.size(); ++i) inv_pow[i] = inv_pow[i - 1] / scale;
  for (size_t n = 0; n < coeffs.size(); ++n) {
    if (coeffs[n] == 0) continue;
    std::vector<Rat> tn = cheb_T_monomial_exact(static_cast<int>(n));
    for (size_t j = 0; j < tn.size(); ++j) {
      if (tn[j] == 0) continue;
      out.c[j] += coeffs[n] * tn[j] * inv_pow[j];
    }
  }
  return out;
}

std::vector<double> monomial_to_cheb(const MonoPoly& p, double scale) {
  // x^j = scale^j * y^j with y = x/scale, and
  // y^j = 2^{1-j} * sum_{r = j, j-2, ...} binom(j, (j-r)/2) T_r(y), r=0 term halved.
  int d = p.degree();
  std::vector<Rat> acc(d + 1, Rat(0));
  Rat s = rat_from_double(scale);
  Rat spow = 1;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) spow *= s;
    if (p.coeffs[j] != 0.0) {
      Rat cj = rat_from_double(p.coeffs[j]) * spow;
      Rat base = cj / (Int(1) << (j > 0 ? j - 1 : 0));
      for (int r = j; r >= 0; r -= 2) {
        Rat w = base * binomial(j, (j - r) / 2);
        if (r == 0) w /= 2;
        if (j == 0) w = cj;  // y^0 = T_0
        acc[r] += w;
      }
    }
  }
  std::vector<double> out(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) out[i] = rat_to_double(acc[i]);
  return out;
}

}  // namespace flatcheb
