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

#include "flatcheb/flatexp.hpp"

#include <doctest.h>

#include <cmath>

#include "flatcheb/bessel.hpp"

using namespace flatcheb;

TEST_SUITE_BEGIN("flatexp");

TEST_CASE("exp_cheb_coeffs known values") {
  ChebSeries c0 = exp_cheb_coeffs(1.0, 0);
  REQUIRE(c0.coeffs.size() == 1);
  CHECK(c0.coeffs[0] == doctest::Approx(1.2660658777520084).epsilon(1e-14));

  ChebSeries c2 = exp_cheb_coeffs(1.0, 2);
  CHECK(c2.coeffs[2] == doctest::Approx(0.2714953395340767).epsilon(1e-12));

  ChebSeries c20 = exp_cheb_coeffs(1.0, 20);
  CHECK(std::abs(series_eval(c20, 0.0) - 1.0) <= 1e-14);
}

TEST_CASE("choose_truncation_order formula values") {
  CHECK(choose_truncation_order(1.0, 1e-6) == 17);
  CHECK(choose_truncation_order(2.0, 1e-3) == 13);
  CHECK(choose_truncation_order(5.0, 1e-6) == 28);
}

TEST_CASE("taylor_truncation_order and degree comparison") {
  CHECK(taylor_truncation_order(1.0, 1e-6) == 24);
  CHECK(taylor_truncation_order(5.0, 1e-3) == 57);
  CHECK(choose_truncation_order(5.0, 1e-3) == 21);
  for (double t : {1.0, 2.0, 5.0})
    for (double eps : {1e-3, 1e-6})
      CHECK(choose_truncation_order(t, eps) <= taylor_truncation_order(t, eps));
}

TEST_CASE("truncation bound holds on a dense grid") {
  for (double t : {1.0, 2.0}) {
    for (double eps : {1e-3, 1e-6}) {
      int N = choose_truncation_order(t, eps);
      ChebSeries f = exp_cheb_coeffs(t, N);
      double worst = 0.0;
      for (int i = 0; i < 2001; ++i) {
        double x = -t + 2.0 * t * i / 2000.0;
        worst = std::max(worst, std::abs(series_eval(f, x) - std::exp(x)));
      }
      CHECK(worst <= eps);
    }
  }
}

TEST_CASE("Bernstein-ellipse coefficient decay") {
  for (double t : {1.0, 2.0, 5.0}) {
    for (double eps : {1e-3, 1e-6}) {
      int N = choose_truncation_order(t, eps);
      double rho = (N + std::sqrt(static_cast<double>(N) * N + t * t)) / t;
      double M = std::exp(t * (rho + 1.0 / rho) / 2.0);
      ChebSeries f = exp_cheb_coeffs(t, N);
      CHECK(f.coeffs[0] <= M);
      for (int n = 1; n <= N; ++n)
        CHECK(std::abs(f.coeffs[n]) <= 2.0 * M * std::pow(rho, -n));
    }
  }
}

TEST_CASE("choose_flat_params formula values") {
  FlatParams a = choose_flat_params(0.1, 0.5, 1.0);
  CHECK(a.k == 2);
  CHECK(a.l == 4);
  CHECK(a.degree_bound == 24);

  FlatParams b = choose_flat_params(0.1, 0.3, 1.0);
  CHECK(b.k == 4);

  FlatParams c = choose_flat_params(1e-2, 0.25, 2.0);
  CHECK(c.k == 4);
  CHECK(c.l == 7);

  for (const FlatParams& p : {a, b, c})
    CHECK(p.degree_bound <= (1L << (p.k + 1)) * p.l);
}

TEST_CASE("choose_flat_params validates ranges") {
  CHECK_THROWS_AS(choose_flat_params(2.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_flat_params(0.1, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_flat_params(0.1, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("build_flat degenerate k=1 is a single truncation") {
  FlatParams p{0.1, 0.9, 1.0, 1, 4, 4 * 2};
  p = choose_flat_params(0.1, 0.9, 1.0);
  REQUIRE(p.k == 2);  // ceil(1/0.9) = 2; force k=1 by hand for the degenerate case
  p.k = 1;
  p.l = 4;
  p.degree_bound = p.l * ((1L << 2) - 2);
  FlatApprox q = build_flat(p);
  REQUIRE(q.factors.size() == 1);
  CHECK(q.factors[0].degree() == 2 * p.l);
  for (double x : {-0.7, 0.0, 0.9})
    CHECK(eval_flat(q, x) == doctest::Approx(series_eval(q.factors[0], x)).epsilon(1e-15));
}

TEST_CASE("build_flat degree accounting for k=2, l=4") {
  FlatParams p = choose_flat_params(0.1, 0.5, 1.0);
  REQUIRE(p.k == 2);
  REQUIRE(p.l == 4);
  FlatApprox q = build_flat(p);
  REQUIRE(q.factors.size() == 2);
  CHECK(q.factors[0].degree() == 8);
  CHECK(q.factors[1].degree() == 16);
  CHECK(q.factors[0].degree() + q.factors[1].degree() == p.degree_bound);
  CHECK(truncation_orders(p) == std::vector<long>{8, 16});
}

TEST_CASE("eval_flat near-identity at zero and accuracy at t") {
  for (double eta : {0.5, 0.25}) {
    FlatParams p = choose_flat_params(0.05, eta, 1.5);
    FlatApprox q = build_flat(p);
    CHECK(std::abs(eval_flat(q, 0.0) - 1.0) <= p.eps);
    CHECK(std::abs(eval_flat(q, p.t) - std::exp(p.t)) <= p.eps);
    CHECK(std::abs(eval_flat(q, -p.t) - std::exp(-p.t)) <= p.eps);
  }
}

TEST_CASE("eval_flat at -10t stays below the flatness envelope") {
  for (double eps : {1e-1, 1e-2, 1e-3})
    for (double eta : {0.5, 0.25})
      for (double t : {0.5, 1.0, 2.0}) {
        FlatApprox q = build_flat(choose_flat_params(eps, eta, t));
        CHECK(std::abs(eval_flat(q, -10.0 * t)) <= std::exp(eta * 10.0 * t));
      }
}

TEST_CASE("expand_flat of k=1 equals the single factor") {
  FlatParams p;
  p.eps = 0.1;
  p.eta = 0.9;
  p.t = 1.0;
  p.k = 1;
  p.l = 3;
  p.degree_bound = 6;
  FlatApprox q = build_flat(p);
  ExpandedFlat e = expand_flat(q);
  REQUIRE(e.series.coeffs.size() == q.factors[0].coeffs.size());
  for (size_t i = 0; i < e.series.coeffs.size(); ++i)
    CHECK(e.series.coeffs[i] == doctest::Approx(q.factors[0].coeffs[i]).epsilon(1e-15));
}

TEST_CASE("expand_flat agrees with eval_flat pointwise") {
  FlatParams p = choose_flat_params(0.1, 0.5, 1.0);
  FlatApprox q = build_flat(p);
  ExpandedFlat e = expand_flat(q);
  CHECK(e.series.degree() == p.degree_bound);
  for (int i = 0; i <= 100; ++i) {
    double x = -p.t + 2.0 * p.t * i / 100.0;
    double want = eval_flat(q, x);
    CHECK(std::abs(series_eval(e.series, x) - want) <=
          1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("expanded coefficients decay regularly") {
  FlatParams p = choose_flat_params(0.1, 0.5, 1.0);
  ExpandedFlat e = expand_flat(build_flat(p));
  DecayOutcome d = check_regular_decay(e.series.coeffs, p.t);
  CHECK(d.ok);
  CHECK(d.cert.C1 > 0.0);
  CHECK(d.cert.C2 >= d.cert.C1);
}

TEST_CASE("expand_flat rejects degrees beyond the float cap") {
  FlatParams p = choose_flat_params(0.1, 0.25, 0.5);  // degree 90
  FlatApprox q = build_flat(p);
  CHECK_THROWS_AS(expand_flat(q), std::domain_error);
}

TEST_CASE("expand_flat_exact matches the double path at low degree") {
  FlatParams p = choose_flat_params(0.1, 0.5, 1.0);
  ExpandedFlat e = expand_flat(build_flat(p));
  ExpandedFlatExact ex = expand_flat_exact(p, 128);
  REQUIRE(ex.series_coeffs.size() == e.series.coeffs.size());
  for (size_t i = 0; i < ex.series_coeffs.size(); ++i)
    CHECK(rat_to_double(ex.series_coeffs[i]) ==
          doctest::Approx(e.series.coeffs[i]).epsilon(1e-12));
  CHECK(ex.mono.eval_double(0.4) == doctest::Approx(e.mono.eval(0.4)).epsilon(1e-10));
}

TEST_CASE("verify_flat_property within and beyond the proven window") {
  // k=4 at t=0.5: the whole +-50t grid sits inside the window where the
  // product bound holds; full pass.
  FlatReport good = verify_flat_property(build_flat(choose_flat_params(0.1, 0.25, 0.5)));
  CHECK(good.accuracy_pass);
  CHECK(good.flatness_pass);
  CHECK(good.pass);
  CHECK(good.right_tail_dominated);
  CHECK(good.max_flat_ratio <= 1.0);

  // k=2: the magnitude bound provably fails once |x| grows past ~2^k l k / 6,
  // which the 50t grid reaches; accuracy still holds. This pins the observed
  // behavior of the construction, not a defect of the scan.
  FlatReport bad = verify_flat_property(build_flat(choose_flat_params(0.1, 0.5, 1.0)));
  CHECK(bad.accuracy_pass);
  CHECK_FALSE(bad.flatness_pass);
  CHECK(bad.max_flat_ratio > 1.0);
}

TEST_CASE("halving eta only in the check tightens the far-left margin") {
  // The tail ratio of a passing k=4 set peaks at x = +t with value e^{-eta t},
  // which a halved eta cannot push past 1; the eta-sensitivity of the check
  // shows on the far-left grid, where the envelope e^{eta|x|/2} is
  // exponentially lower than the one the product was built against.
  FlatParams p = choose_flat_params(0.1, 0.5, 1.0);
  FlatApprox q = build_flat(p);
  FlatReport full = verify_flat_property(q);
  q.params.eta /= 2.0;  // check only; the factors are unchanged
  FlatReport half = verify_flat_property(q);
  CHECK(half.max_flat_ratio > full.max_flat_ratio);
  CHECK_FALSE(half.flatness_pass);

  // A passing set keeps its right-boundary maximum under the halved envelope.
  FlatApprox ok = build_flat(choose_flat_params(0.1, 0.25, 0.5));
  FlatReport r0 = verify_flat_property(ok);
  REQUIRE(r0.flatness_pass);
  CHECK(r0.max_flat_ratio ==
        doctest::Approx(std::exp(-ok.params.eta * ok.params.t)).epsilon(1e-6));
}

TEST_CASE("serial and parallel verification agree bitwise") {
  FlatApprox q = build_flat(choose_flat_params(0.1, 0.25, 0.5));
  FlatReport a = verify_flat_property(q);
  FlatReport b = verify_flat_property_serial(q);
  CHECK(a.max_abs_err == b.max_abs_err);
  CHECK(a.max_flat_ratio == b.max_flat_ratio);
  CHECK(a.interior_ratio_excess == b.interior_ratio_excess);
  CHECK(a.right_tail_dominated == b.right_tail_dominated);
  CHECK(a.pass == b.pass);
}

TEST_CASE("verify_bounded basic examples") {
  CHECK(verify_bounded(MonoPoly({1.0, 1.0}), 1, 1.0));
  CHECK_FALSE(verify_bounded(MonoPoly({0.0, 0.0, 1.0}), 1, 10.0));
  CHECK_FALSE(verify_bounded(MonoPoly({1.0, 3.0}), 1, 1.0));  // |c_1| > C/1!
}

TEST_CASE("expanded Q at t<1 is (degree, c e^{t^2/4})-bounded") {
  for (double eps : {1e-1, 1e-3}) {
    FlatParams p = choose_flat_params(eps, 0.5, 0.5);
    ExpandedFlat e = expand_flat(build_flat(p));
    DecayOutcome d = check_regular_decay(e.series.coeffs, p.t);
    REQUIRE(d.ok);
    double C = bounding_constant(p.t, p.k, p.l, d.cert.C2);
    CHECK(verify_bounded(e.mono, p.degree_bound, C, 1e-12));
  }
}

TEST_CASE("exact-rational boundedness spot check at degree 90") {
  FlatParams p = choose_flat_params(0.1, 0.25, 0.5);
  REQUIRE(p.degree_bound == 90);
  ExpandedFlatExact e = expand_flat_exact(p, 192);
  DecayOutcomeExact d = check_regular_decay_exact(e.series_coeffs, rat_from_double(p.t));
  REQUIRE(d.ok);
  EnclosedReal et = exp_enclosure(rat_from_double(p.t) * rat_from_double(p.t) / 4,
                                  Rat(1, 1000000000));
  CHECK(verify_bounded_exact(e.mono, p.degree_bound, d.cert.C2 * et.hi));
}

TEST_CASE("check_regular_decay of the exponential coefficients") {
  ChebSeries f = exp_cheb_coeffs(1.0, 10);
  DecayOutcome d = check_regular_decay(f.coeffs, 1.0);
  REQUIRE(d.ok);
  CHECK(d.cert.C1 >= 1.0);
  CHECK(d.cert.C2 <= 2.0 * std::cosh(1.0));
  CHECK(d.cert.range_lo == 0);
  CHECK(d.cert.range_hi == 10);
}

TEST_CASE("check_regular_decay rejects non-positive coefficients") {
  DecayOutcome d = check_regular_decay({1.0, 0.0, 0.5}, 1.0);
  CHECK_FALSE(d.ok);
  CHECK(d.offending_index == 1);
}

TEST_CASE("product of two exponential series still decays regularly") {
  ChebSeries f = exp_cheb_coeffs(1.0, 12);
  ChebSeries g = series_mul(f, f);
  DecayOutcome d = check_regular_decay(g.coeffs, 1.0);
  CHECK(d.ok);
}

TEST_CASE("taylor_flat_baseline structure and verification") {
  FlatApprox b = taylor_flat_baseline(0.1, 0.25, 0.5);
  CHECK(b.params.k == 4);
  REQUIRE(b.factors.size() == 4);
  // Factor evaluations track e^{x/k} on the accuracy interval.
  for (double x : {-0.4, 0.0, 0.5})
    CHECK(series_eval(b.factors[1], x) ==
          doctest::Approx(std::exp(x / b.params.k)).epsilon(1e-6));
  FlatReport r = verify_flat_property(b);
  CHECK(r.accuracy_pass);
  CHECK(r.flatness_pass);
}

TEST_CASE("bounding_constant formula values") {
  CHECK(bounding_constant(0.5, 3, 10, 1.0) == doctest::Approx(std::exp(0.0625)));
  CHECK(bounding_constant(2.0, 2, 5, 1.5) ==
        doctest::Approx(1.5 * std::exp(1.0)));  // t == k branch
  CHECK(bounding_constant(2.0, 1, 1, 1.0) == doctest::Approx(4.0 * std::exp(1.0)));
}

TEST_CASE("flat report serializes to the documented schema") {
  FlatReport r = verify_flat_property(build_flat(choose_flat_params(0.1, 0.25, 0.5)));
  nlohmann::json j = flat_report_to_json(r);
  CHECK(j["schema"] == "flatcheb.flat_report/1");
  CHECK(j.contains("params"));
  CHECK(j.contains("max_abs_err"));
  CHECK(j.contains("max_flat_ratio"));
  CHECK(j.contains("grid"));
  CHECK(j["pass"].is_boolean());
}

TEST_SUITE_END();
