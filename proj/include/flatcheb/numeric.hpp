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

#ifndef FLATCHEB_NUMERIC_HPP
#define FLATCHEB_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace flatcheb {

// Exact integer / rational scalars (GMP-backed).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Extended-precision binary floats. Float256 is the workhorse for series
// evaluation outside the base interval, where Chebyshev terms grow like
// (2|x|/t)^n and cancel down to O(e^x); 256 bits covers every grid used here.
// Float1024 is reserved for sign checks whose margins shrink super-exponentially
// in the truncation order.
using Float256 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;
using Float1024 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<1024, boost::multiprecision::digit_base_2>>;

inline Rat rat_from_double(double x) { return Rat(x); }  // exact (binary fraction)

inline double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

template <class F>
F rat_to_float(const Rat& q) {
  return F(boost::multiprecision::numerator(q)) / F(boost::multiprecision::denominator(q));
}

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

// Sign of an exact rational: -1, 0, +1.
inline int sgn(const Rat& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }
inline int sgn(const Int& z) { return z < 0 ? -1 : (z > 0 ? 1 : 0); }

/// A rational enclosure [lo, hi] of a real constant. All arithmetic is exact,
/// so enclosures only widen through genuine dependency, never rounding.
struct EnclosedReal {
  Rat lo;
  Rat hi;

  EnclosedReal() = default;
  EnclosedReal(Rat point) : lo(point), hi(std::move(point)) {}
  EnclosedReal(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("EnclosedReal: lo > hi");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }

  // Certified sign: +1 if the whole interval is positive, -1 if negative,
  // 0 if the enclosure straddles (or touches) zero and cannot decide.
  int sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }

  // Outer absolute bound max(|lo|, |hi|).
  Rat abs_upper() const {
    Rat a = lo < 0 ? Rat(-lo) : lo;
    Rat b = hi < 0 ? Rat(-hi) : hi;
    return a > b ? a : b;
  }
  // Inner absolute bound min over the interval of |x|; 0 if it contains zero.
  Rat abs_lower() const {
    if (contains_zero()) return Rat(0);
    return lo > 0 ? lo : Rat(-hi);
  }

  double mid_double() const { return rat_to_double(mid()); }

  /// Outward rounding to dyadic endpoints with denominator 2^bits. The
  /// enclosure can only widen; it caps the bit-size of the endpoints, which
  /// keeps downstream exact arithmetic (Sturm chains) tractable.
  EnclosedReal outward_round(unsigned bits) const;
};

EnclosedReal operator+(const EnclosedReal& a, const EnclosedReal& b);
EnclosedReal operator-(const EnclosedReal& a, const EnclosedReal& b);
EnclosedReal operator-(const EnclosedReal& a);
EnclosedReal operator*(const EnclosedReal& a, const EnclosedReal& b);
EnclosedReal operator*(const Rat& c, const EnclosedReal& a);

// Division requires the divisor to exclude zero.
EnclosedReal operator/(const EnclosedReal& a, const EnclosedReal& b);

/// Enclosure of e^x for rational x, width at most tol.
EnclosedReal exp_enclosure(const Rat& x, const Rat& tol);

/// Enclosure of cosh x for rational x, width at most tol.
EnclosedReal cosh_enclosure(const Rat& x, const Rat& tol);

/// Thrown when an enclosure cannot reach the requested width within the
/// iteration budget; carries the width that was achieved.
class EnclosureError : public std::runtime_error {
 public:
  EnclosureError(const std::string& what, Rat achieved)
      : std::runtime_error(what), achieved_width(std::move(achieved)) {}
  Rat achieved_width;
};

}  // namespace flatcheb

#endif  // FLATCHEB_NUMERIC_HPP
