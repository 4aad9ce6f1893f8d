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

#include "flatcheb/numeric.hpp"

#include <algorithm>

namespace flatcheb {

Int factorial(unsigned n) {
  Int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Int num = 1;
  for (unsigned i = 0; i < k; ++i) num *= (n - i);
  return num / factorial(k);
}

EnclosedReal EnclosedReal::outward_round(unsigned bits) const {
  Int scale = Int(1) << bits;
  // floor(lo * 2^bits) / 2^bits and the ceiling counterpart for hi.
  Rat ls = lo * scale;
  Int lnum = boost::multiprecision::numerator(ls);
  Int lden = boost::multiprecision::denominator(ls);
  Int lfloor = lnum / lden;
  if (lfloor * lden > lnum) lfloor -= 1;  // fix toward -inf for negatives
  Rat hs = hi * scale;
  Int hnum = boost::multiprecision::numerator(hs);
  Int hden = boost::multiprecision::denominator(hs);
  Int hceil = hnum / hden;
  if (hceil * hden < hnum) hceil += 1;
  return {Rat(lfloor, scale), Rat(hceil, scale)};
}

EnclosedReal operator+(const EnclosedReal& a, const EnclosedReal& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

EnclosedReal operator-(const EnclosedReal& a, const EnclosedReal& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

EnclosedReal operator-(const EnclosedReal& a) { return {-a.hi, -a.lo}; }

EnclosedReal operator*(const EnclosedReal& a, const EnclosedReal& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {std::move(lo), std::move(hi)};
}

EnclosedReal operator*(const Rat& c, const EnclosedReal& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

EnclosedReal operator/(const EnclosedReal& a, const EnclosedReal& b) {
  if (b.contains_zero()) throw std::domain_error("EnclosedReal: division by interval containing 0");
  EnclosedReal inv{Rat(1) / b.hi, Rat(1) / b.lo};
  return a * inv;
}

namespace {

// Enclosure of e^x for x >= 0 by partial sums plus a geometric tail majorant:
// once the term ratio x/(m+1) drops below 1/2, the remainder after term m is
// at most 2 * term_{m+1}.
EnclosedReal exp_enclosure_nonneg(const Rat& x, const Rat& tol) {
  Rat sum = 1;
  Rat term = 1;
  for (unsigned m = 1; m <= 100000; ++m) {
    term = term * x / m;
    sum += term;
    Rat ratio = x / (m + 1);
    if (ratio < Rat(1, 2)) {
      Rat next = term * ratio;
      Rat tail = 2 * next;
      if (tail <= tol) return {sum, sum + tail};
    }
  }
  throw EnclosureError("exp_enclosure: iteration budget exhausted", Rat(-1));
}

}  // namespace

EnclosedReal exp_enclosure(const Rat& x, const Rat& tol) {
  if (x >= 0) return exp_enclosure_nonneg(x, tol);
  // e^x = 1 / e^{-x}; pick the inner tolerance so the reciprocal width fits.
  Rat ax = -x;
  Rat inner_tol = tol;  // e^{-x} >= 1 for x<0, so reciprocal never widens
  EnclosedReal e = exp_enclosure_nonneg(ax, inner_tol);
  return {Rat(1) / e.hi, Rat(1) / e.lo};
}

EnclosedReal cosh_enclosure(const Rat& x, const Rat& tol) {
  Rat ax = x < 0 ? Rat(-x) : x;
  EnclosedReal ep = exp_enclosure_nonneg(ax, tol / 2);
  EnclosedReal em{Rat(1) / ep.hi, Rat(1) / ep.lo};
  EnclosedReal s = ep + em;
  return {s.lo / 2, s.hi / 2};
}

}  // namespace flatcheb
