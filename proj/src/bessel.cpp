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

#include "flatcheb/bessel.hpp"

#include <cmath>

namespace flatcheb {

namespace {
constexpr unsigned kMaxTerms = 100000;

Rat leading_term(unsigned v, const Rat& x) {
  Rat h = x / 2;
  Rat t = 1;
  for (unsigned i = 0; i < v; ++i) t *= h;
  return t / factorial(v);
}
}  // namespace

EnclosedReal bessel_I(unsigned v, const Rat& x, const Rat& tol) {
  if (x <= 0) throw std::invalid_argument("bessel_I: x must be positive");
  if (tol <= 0) throw std::invalid_argument("bessel_I: tol must be positive");
  Rat h2 = (x / 2) * (x / 2);
  Rat term = leading_term(v, x);
  Rat sum = term;
  for (unsigned m = 1; m <= kMaxTerms; ++m) {
    term = term * h2 / (Int(m) * Int(m + v));
    sum += term;
    // Remainder after term m is at most next / (1 - ratio) once the ratio of
    // consecutive terms is below 1/2, hence at most 2 * next.
    Rat ratio_next = h2 / (Int(m + 1) * Int(m + 1 + v));
    if (ratio_next < Rat(1, 2)) {
      Rat next = term * ratio_next;
      Rat tail = 2 * next;
      if (tail <= tol) return {sum, sum + tail};
    }
  }
  throw EnclosureError("bessel_I: tolerance not reached within iteration budget",
                       Rat(-1));
}

EnclosedReal bessel_I_rel(unsigned v, const Rat& x, const Rat& rel_tol) {
  return bessel_I(v, x, rel_tol * leading_term(v, x));
}

double bessel_I_approx(unsigned v, double x) {
  double h2 = 0.25 * x * x;
  double term = 1.0;
  for (unsigned i = 1; i <= v; ++i) term *= 0.5 * x / i;
  double sum = term;
  for (unsigned m = 1; m < 1000; ++m) {
    term *= h2 / (static_cast<double>(m) * (m + v));
    double prev = sum;
    sum += term;
    if (sum == prev) break;
  }
  return sum;
}

BoundCheck check_bessel_bounds(unsigned v, const Rat& x) {
  if (x <= 0) throw std::invalid_argument("check_bessel_bounds: x must be positive");
  Rat lower = leading_term(v, x);  // (x/2)^v / v!, exact
  // The margins shrink with x, so refine a few times before giving up.
  Rat tol = lower / 1000000;
  for (int attempt = 0; attempt < 6; ++attempt) {
    EnclosedReal iv = bessel_I(v, x, tol);
    EnclosedReal ch = cosh_enclosure(x, tol / (lower > 1 ? Rat(1) : lower));
    EnclosedReal upper = Rat(lower) * ch;
    bool lower_ok = lower < iv.lo;
    bool lower_fail = iv.hi <= lower;
    bool upper_ok = iv.hi < upper.lo;
    bool upper_fail = upper.hi <= iv.lo;
    if (lower_ok && upper_ok) return BoundCheck::Holds;
    if (lower_fail || upper_fail) return BoundCheck::Fails;
    tol /= 1024;
  }
  return BoundCheck::Indeterminate;
}

}  // namespace flatcheb
