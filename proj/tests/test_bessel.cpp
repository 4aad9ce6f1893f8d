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

#include <doctest.h>

#include <cmath>

using namespace flatcheb;

namespace {

// Independent oracle: 30 explicit series terms in plain doubles plus a crude
// remainder bound (twice the next term).
struct OracleResult {
  double value;
  double remainder;
};

OracleResult bessel_oracle_30(unsigned v, double x) {
  double term = 1.0;
  for (unsigned i = 1; i <= v; ++i) term *= 0.5 * x / i;
  double sum = term;
  double h2 = 0.25 * x * x;
  for (unsigned m = 1; m <= 30; ++m) {
    term *= h2 / (static_cast<double>(m) * (m + v));
    sum += term;
  }
  double next = term * h2 / (31.0 * (31 + v));
  return {sum, 2.0 * next};
}

}  // namespace

TEST_SUITE_BEGIN("bessel");

TEST_CASE("enclosure of I_0(1) contains the known value") {
  EnclosedReal e = bessel_I(0, Rat(1), Rat(1, 1000000000000LL));
  CHECK(e.width() <= Rat(1, 1000000000000LL));
  CHECK(e.contains(rat_from_double(1.2660658777520084)));
  OracleResult o = bessel_oracle_30(0, 1.0);
  CHECK(std::abs(e.mid_double() - o.value) <= o.remainder + 1e-13);
}

TEST_CASE("enclosure of I_1(2) contains the known value") {
  EnclosedReal e = bessel_I(1, Rat(2), Rat(1, 10000000000LL));
  CHECK(e.contains(rat_from_double(1.590636854637329)));
  OracleResult o = bessel_oracle_30(1, 2.0);
  CHECK(std::abs(e.mid_double() - o.value) <= o.remainder + 1e-12);
}

TEST_CASE("small argument is dominated by the leading term") {
  // I_3(0.01) ~ (0.005)^3 / 6 with relative tail O(x^2).
  Rat x(1, 100);
  EnclosedReal e = bessel_I(3, x, Rat(1, Int("1000000000000000000000000")));
  double lead = std::pow(0.005, 3) / 6.0;
  CHECK(e.mid_double() == doctest::Approx(lead).epsilon(1e-4));
  CHECK(e.mid_double() >= lead);
}

TEST_CASE("bessel_I rejects bad inputs") {
  CHECK_THROWS_AS(bessel_I(0, Rat(-1), Rat(1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(bessel_I(0, Rat(1), Rat(0)), std::invalid_argument);
}

TEST_CASE("two-sided bounds hold on the full grid") {
  for (unsigned v = 0; v <= 20; ++v) {
    for (const Rat& x : {Rat(1, 10), Rat(1, 2), Rat(1), Rat(2), Rat(5), Rat(10)}) {
      CAPTURE(v);
      CHECK(check_bessel_bounds(v, x) == BoundCheck::Holds);
    }
  }
}

TEST_CASE("monotonicity in the argument is certified by enclosures") {
  for (unsigned v : {0u, 1u, 4u, 9u}) {
    Rat prev_hi(-1);
    for (const Rat& x : {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(4)}) {
      EnclosedReal e = bessel_I_rel(v, x, Rat(1, 1000000000000LL));
      CHECK(e.lo > prev_hi);  // I_v(x_prev) < I_v(x) certified
      prev_hi = e.hi;
    }
  }
}

TEST_CASE("shrinking tol shrinks the enclosure width") {
  Rat x(3, 2);
  Rat tol(1, 1000);
  Rat prev_width(-1);
  for (int i = 0; i < 6; ++i) {
    EnclosedReal e = bessel_I(2, x, tol);
    CHECK(e.width() <= tol);
    if (prev_width >= 0) CHECK(e.width() <= prev_width);
    prev_width = e.width();
    tol /= 1000;
  }
}

TEST_CASE("double approximation agrees with the enclosure") {
  for (unsigned v : {0u, 2u, 7u}) {
    for (double x : {0.3, 1.0, 4.5}) {
      EnclosedReal e = bessel_I_rel(v, rat_from_double(x), Rat(1, 1000000000000000LL));
      CHECK(bessel_I_approx(v, x) == doctest::Approx(e.mid_double()).epsilon(1e-13));
    }
  }
}

TEST_SUITE_END();
