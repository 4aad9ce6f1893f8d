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

#ifndef FLATCHEB_EXACTPOLY_HPP
#define FLATCHEB_EXACTPOLY_HPP

#include <vector>

#include "flatcheb/numeric.hpp"

namespace flatcheb {

/// Dense univariate polynomial with exact integer coefficients, c[0] + c[1] x + ...
/// Trailing zeros are tolerated in storage; degree() skips them.
struct ZPoly {
  std::vector<Int> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) {}

  int degree() const;
  bool is_zero() const { return degree() == 0 && (c.empty() || c[0] == 0); }
  const Int& lc() const;  // leading coefficient (degree() index); 0 for the zero poly
  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return sgn(eval(x)); }
  void trim();  // drop trailing zeros (keeps at least one coefficient)
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const Int& s, const ZPoly& a);
ZPoly derivative(const ZPoly& a);

/// Positive gcd of all coefficients (content); 0 for the zero polynomial.
Int content(const ZPoly& a);
/// a / content(a); the zero polynomial maps to itself.
ZPoly primitive_part(const ZPoly& a);

/// Dense univariate polynomial with exact rational coefficients.
struct RatPoly {
  std::vector<Rat> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) {}

  int degree() const;
  Rat eval(const Rat& x) const;
  double eval_double(double x) const;
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const Rat& s, const RatPoly& a);

/// Clear denominators: returns the primitive integer polynomial with the same
/// roots and the same signs up to the (positive) scale factor that was removed.
ZPoly to_integer_poly(const RatPoly& a);

/// Integer Chebyshev polynomials in the monomial basis, exact coefficients.
ZPoly cheb_T_zpoly(int n);
ZPoly cheb_U_zpoly(int n);

/// Sturm chain of an integer polynomial: sign-safe primitive pseudo-remainder
/// sequence (each pseudo-remainder is premultiplied by an even power of the
/// divisor's leading coefficient, then stripped of content).
struct SturmChain {
  std::vector<ZPoly> polys;

  /// Sign variations of the chain evaluated at rational x.
  int variations_at(const Rat& x) const;
  /// Sign variations in the limit x -> -inf (leading coefficients and parities).
  int variations_at_minus_inf() const;
};

SturmChain build_sturm_chain(const ZPoly& p);

/// Number of distinct real roots of p in (a, b]. Requires p(a) != 0.
long sturm_root_count(const SturmChain& chain, const Rat& a, const Rat& b);
/// Number of distinct real roots of p in (-inf, b].
long sturm_root_count_from_minus_inf(const SturmChain& chain, const Rat& b);

}  // namespace flatcheb

#endif  // FLATCHEB_EXACTPOLY_HPP
