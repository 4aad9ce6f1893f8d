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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flatcheb/bessel.hpp"
#include "flatcheb/parallel.hpp"

namespace flatcheb {

namespace {
constexpr double kE = 2.718281828459045;
}

ChebSeries exp_cheb_coeffs(double t, int N) {
  if (!(t > 0.0)) throw std::invalid_argument("exp_cheb_coeffs: t must be positive");
  if (N < 0) throw std::invalid_argument("exp_cheb_coeffs: N must be nonnegative");
  Rat tr = rat_from_double(t);
  Rat rel(1, Int(1) << 60);
  std::vector<double> a(N + 1);
  for (int n = 0; n <= N; ++n) {
    EnclosedReal e = bessel_I_rel(static_cast<unsigned>(n), tr, rel);
    double mid = e.mid_double();
    a[n] = (n == 0) ? mid : 2.0 * mid;
  }
  return ChebSeries(t, std::move(a));
}

std::vector<Rat> exp_cheb_coeffs_exact(const Rat& t, int N, int prec_bits) {
  Rat rel = Rat(1, Int(1) << prec_bits);
  std::vector<Rat> a(N + 1);
  for (int n = 0; n <= N; ++n) {
    EnclosedReal e = bessel_I_rel(static_cast<unsigned>(n), t, rel);
    a[n] = (n == 0) ? e.mid() : Rat(2) * e.mid();
  }
  return a;
}

int choose_truncation_order(double t, double eps) {
  if (!(t > 0.0)) throw std::invalid_argument("choose_truncation_order: t must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("choose_truncation_order: eps must lie in (0,1)");
  return static_cast<int>(std::ceil(kE * t + std::log(1.0 / eps)));
}

int taylor_truncation_order(double t, double eps) {
  if (!(t > 0.0)) throw std::invalid_argument("taylor_truncation_order: t must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("taylor_truncation_order: eps must lie in (0,1)");
  return static_cast<int>(std::ceil(10.0 * t + std::log(1.0 / eps)));
}

FlatParams choose_flat_params(double eps, double eta, double t) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("choose_flat_params: eps must lie in (0,1)");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("choose_flat_params: eta must lie in (0,1)");
  if (!(t > 0.0)) throw std::invalid_argument("choose_flat_params: t must be positive");
  FlatParams p;
  p.eps = eps;
  p.eta = eta;
  p.t = t;
  p.k = static_cast<int>(std::ceil(1.0 / eta));
  if (p.k > 24) throw std::domain_error("choose_flat_params: eta too small (k > 24)");
  p.l = static_cast<long>(std::ceil(0.5 * ((kE + 1.0) * t + std::log(p.k / eps))));
  if (p.l < 1) p.l = 1;
  p.degree_bound = p.l * ((1L << (p.k + 1)) - 2);
  return p;
}

std::vector<long> truncation_orders(const FlatParams& p) {
  std::vector<long> orders(p.k);
  for (int i = 1; i <= p.k; ++i) orders[i - 1] = (1L << i) * p.l;
  return orders;
}

FlatApprox build_flat(const FlatParams& p) {
  if (p.k < 1 || p.l < 1) throw std::invalid_argument("build_flat: invalid parameters");
  std::vector<long> orders = truncation_orders(p);
  long top = orders.back();
  // One Bessel sweep up to the top order; factors are prefixes of it.
  ChebSeries full = exp_cheb_coeffs(p.t, static_cast<int>(top));
  FlatApprox q;
  q.params = p;
  q.factors.reserve(p.k);
  double scale = p.k * p.t;
  for (long n : orders) {
    std::vector<double> c(full.coeffs.begin(), full.coeffs.begin() + n + 1);
    q.factors.emplace_back(scale, std::move(c));
  }
  return q;
}

double eval_flat(const FlatApprox& q, double x) {
  if (q.factors.empty()) throw std::invalid_argument("eval_flat: no factors");
  double scale = q.factors.front().scale;
  if (std::abs(x) <= scale) {
    double prod = 1.0;
    for (const auto& f : q.factors) prod *= series_eval(f, x);
    return prod;
  }
  Float256 prod = eval_flat_ext(q, Float256(x));
  double out = prod.convert_to<double>();
  if (!std::isfinite(out)) throw std::overflow_error("eval_flat: result exceeds double range");
  return out;
}

Float256 eval_flat_ext(const FlatApprox& q, const Float256& x) {
  Float256 prod = 1;
  for (const auto& f : q.factors) prod *= series_eval_ext(f, x);
  if (!boost::multiprecision::isfinite(prod))
    throw std::overflow_error("eval_flat_ext: overflow");
  return prod;
}

ExpandedFlat expand_flat(const FlatApprox& q) {
  if (q.factors.empty()) throw std::invalid_argument("expand_flat: no factors");
  if (q.params.degree_bound > kMonomialFloatDegreeCap)
    throw std::domain_error(
        "expand_flat: degree beyond the float cap; use expand_flat_exact");
  ChebSeries acc = q.factors.front();
  for (size_t i = 1; i < q.factors.size(); ++i) acc = series_mul(acc, q.factors[i]);
  MonoPoly mono = to_monomial(acc);
  return {std::move(acc), std::move(mono)};
}

ExpandedFlatExact expand_flat_exact(const FlatParams& p, int prec_bits) {
  std::vector<long> orders = truncation_orders(p);
  Rat t = rat_from_double(p.t);
  std::vector<Rat> full = exp_cheb_coeffs_exact(t, static_cast<int>(orders.back()), prec_bits);
  std::vector<Rat> acc(full.begin(), full.begin() + orders.front() + 1);
  for (size_t i = 1; i < orders.size(); ++i) {
    std::vector<Rat> fi(full.begin(), full.begin() + orders[i] + 1);
    acc = cheb_coeff_mul_exact(acc, fi);
  }
  ExpandedFlatExact out;
  out.scale = Rat(p.k) * t;
  out.mono = to_monomial_exact(out.scale, acc);
  out.series_coeffs = std::move(acc);
  return out;
}

namespace {

struct ScanResult {
  double max_abs_err = 0.0;
  double max_ratio_tail = 0.0;
  double interior_excess = 0.0;
  bool right_dominated = true;
};

double interior_point(const FlatParams& p, const GridSpec& g, int i) {
  return -p.t + 2.0 * p.t * i / (g.interior_points - 1);
}

// Interior sample: error against e^x plus the ratio diagnostic.
void interior_sample(const FlatApprox& q, double x, double* err, double* excess) {
  double v = eval_flat(q, x);
  double ex = std::exp(x);
  *err = std::abs(v - ex);
  double bound = std::max(1.0, ex) * std::exp(q.params.eta * std::abs(x));
  *excess = std::max(0.0, std::abs(v) / bound - 1.0);
}

// Tail sample at |x| = r, extended precision: flatness ratio, and domination
// by e^x on the right tail. Every factor satisfies f(x/k) < e^{x/k} once
// x >= k t (all series terms positive there), so domination is strict beyond
// k t; on [t, k t) the factors oscillate within their truncation error and
// the product may exceed e^x by up to eps.
void tail_sample(const FlatApprox& q, double r, bool positive, double* ratio,
                 bool* right_dom_ok) {
  Float256 x = positive ? Float256(r) : Float256(-r);
  Float256 v = eval_flat_ext(q, x);
  Float256 ex = exp(x);
  Float256 one = 1;
  Float256 bound = (ex > one ? ex : one) * exp(Float256(q.params.eta) * Float256(r));
  Float256 ratio_ext = abs(v) / bound;
  *ratio = ratio_ext.convert_to<double>();
  *right_dom_ok = true;
  if (positive) {
    if (r >= q.params.k * q.params.t)
      *right_dom_ok = v <= ex * Float256(1.0 + 1e-12);
    else
      *right_dom_ok = v <= ex + Float256(q.params.eps);
  }
}

std::vector<double> tail_radii(const FlatParams& p, const GridSpec& g) {
  // Geometric spacing from t out to extent * t.
  std::vector<double> r(g.tail_points);
  double ratio = std::pow(g.extent, 1.0 / g.tail_points);
  double cur = p.t;
  for (int j = 0; j < g.tail_points; ++j) {
    cur *= ratio;
    r[j] = cur;
  }
  r.back() = g.extent * p.t;
  return r;
}

ScanResult scan_serial(const FlatApprox& q, const GridSpec& g) {
  ScanResult res;
  for (int i = 0; i < g.interior_points; ++i) {
    double err, excess;
    interior_sample(q, interior_point(q.params, g, i), &err, &excess);
    res.max_abs_err = std::max(res.max_abs_err, err);
    res.interior_excess = std::max(res.interior_excess, excess);
  }
  std::vector<double> radii = tail_radii(q.params, g);
  for (double r : radii) {
    for (bool positive : {false, true}) {
      double ratio;
      bool right_ok;
      tail_sample(q, r, positive, &ratio, &right_ok);
      res.max_ratio_tail = std::max(res.max_ratio_tail, ratio);
      if (!right_ok) res.right_dominated = false;
    }
  }
  // The boundary |x| = t belongs to both bullets.
  for (bool positive : {false, true}) {
    double ratio;
    bool right_ok;
    tail_sample(q, q.params.t, positive, &ratio, &right_ok);
    res.max_ratio_tail = std::max(res.max_ratio_tail, ratio);
    if (!right_ok) res.right_dominated = false;
  }
  return res;
}

ScanResult scan_parallel(const FlatApprox& q, const GridSpec& g) {
  ScanResult res;
  double max_err = 0.0, max_excess = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_err, max_excess) \
    num_threads(effective_threads())
  for (int i = 0; i < g.interior_points; ++i) {
    double err, excess;
    interior_sample(q, interior_point(q.params, g, i), &err, &excess);
    max_err = std::max(max_err, err);
    max_excess = std::max(max_excess, excess);
  }
  res.max_abs_err = max_err;
  res.interior_excess = max_excess;

  std::vector<double> radii = tail_radii(q.params, g);
  radii.push_back(q.params.t);
  double max_ratio = 0.0;
  int right_ok_all = 1;
#pragma omp parallel for schedule(dynamic) reduction(max : max_ratio) \
    reduction(min : right_ok_all) num_threads(effective_threads())
  for (size_t j = 0; j < 2 * radii.size(); ++j) {
    double ratio;
    bool right_ok;
    tail_sample(q, radii[j / 2], j % 2 == 1, &ratio, &right_ok);
    max_ratio = std::max(max_ratio, ratio);
    right_ok_all = std::min(right_ok_all, right_ok ? 1 : 0);
  }
  res.max_ratio_tail = max_ratio;
  res.right_dominated = right_ok_all == 1;
  return res;
}

FlatReport make_report(const FlatApprox& q, const GridSpec& g, const ScanResult& s) {
  FlatReport r;
  r.params = q.params;
  r.grid = g;
  r.max_abs_err = s.max_abs_err;
  r.max_flat_ratio = s.max_ratio_tail;
  r.interior_ratio_excess = s.interior_excess;
  r.right_tail_dominated = s.right_dominated;
  r.accuracy_pass = s.max_abs_err <= q.params.eps;
  r.flatness_pass = s.max_ratio_tail <= 1.0;
  r.pass = r.accuracy_pass && r.flatness_pass;
  return r;
}

}  // namespace

FlatReport verify_flat_property(const FlatApprox& q, const GridSpec& grid) {
  return make_report(q, grid, scan_parallel(q, grid));
}

FlatReport verify_flat_property_serial(const FlatApprox& q, const GridSpec& grid) {
  return make_report(q, grid, scan_serial(q, grid));
}

bool verify_bounded(const MonoPoly& p, long d, double C, double slack) {
  if (p.degree() > d) return false;
  double inv_fact = 1.0;
  for (size_t q = 0; q < p.coeffs.size(); ++q) {
    if (q > 0) inv_fact /= static_cast<double>(q);
    if (std::abs(p.coeffs[q]) > C * inv_fact * (1.0 + slack)) return false;
  }
  return true;
}

bool verify_bounded_exact(const RatPoly& p, long d, const Rat& C_hi) {
  if (p.degree() > d) return false;
  Rat inv_fact = 1;
  for (size_t q = 0; q < p.c.size(); ++q) {
    if (q > 0) inv_fact /= Int(q);
    Rat mag = p.c[q] < 0 ? Rat(-p.c[q]) : p.c[q];
    if (mag > C_hi * inv_fact) return false;
  }
  return true;
}

DecayOutcome check_regular_decay(const std::vector<double>& coeffs, double t) {
  DecayOutcome out;
  if (coeffs.empty() || !(t > 0.0)) return out;
  double factor = 1.0;  // n! (2/t)^n, built incrementally
  double c1 = 0.0, c2 = 0.0;
  for (size_t n = 0; n < coeffs.size(); ++n) {
    if (n > 0) factor *= 2.0 * n / t;
    if (!(coeffs[n] > 0.0)) {
      out.offending_index = static_cast<int>(n);
      return out;
    }
    double r = coeffs[n] * factor;
    if (!std::isfinite(r)) {
      out.offending_index = static_cast<int>(n);
      return out;
    }
    c1 = (n == 0) ? r : std::min(c1, r);
    c2 = (n == 0) ? r : std::max(c2, r);
  }
  out.ok = true;
  out.cert = {c1, c2, t, 0, static_cast<int>(coeffs.size()) - 1};
  return out;
}

DecayOutcomeExact check_regular_decay_exact(const std::vector<Rat>& coeffs, const Rat& t) {
  DecayOutcomeExact out;
  if (coeffs.empty() || t <= 0) return out;
  Rat factor = 1;
  Rat c1 = 0, c2 = 0;
  for (size_t n = 0; n < coeffs.size(); ++n) {
    if (n > 0) factor *= Rat(2 * Int(n)) / t;
    if (coeffs[n] <= 0) {
      out.offending_index = static_cast<int>(n);
      return out;
    }
    Rat r = coeffs[n] * factor;
    if (n == 0) {
      c1 = c2 = r;
    } else {
      c1 = std::min(c1, r);
      c2 = std::max(c2, r);
    }
  }
  out.ok = true;
  out.cert = {c1, c2, t, 0, static_cast<int>(coeffs.size()) - 1};
  return out;
}

FlatApprox taylor_flat_baseline(double eps, double eta, double t) {
  if (!(eps > 0.0 && eps < 1.0) || !(eta > 0.0 && eta < 1.0) || !(t > 0.0))
    throw std::invalid_argument("taylor_flat_baseline: parameters out of range");
  FlatParams p;
  p.eps = eps;
  p.eta = eta;
  p.t = t;
  p.k = static_cast<int>(std::ceil(1.0 / eta));
  if (p.k > 24) throw std::domain_error("taylor_flat_baseline: eta too small (k > 24)");
  p.l = static_cast<long>(std::ceil(0.5 * (11.0 * t + std::log(p.k / eps))));
  if (p.l < 1) p.l = 1;
  p.degree_bound = p.l * ((1L << (p.k + 1)) - 2);

  FlatApprox q;
  q.params = p;
  double scale = p.k * p.t;
  for (long order : truncation_orders(p)) {
    // Taylor truncation of e^{x/k} in the monomial basis, then the exact
    // change of basis to Chebyshev coefficients on [-kt, kt].
    std::vector<double> mono(order + 1);
    double term = 1.0;
    for (long j = 0; j <= order; ++j) {
      mono[j] = term;
      term /= p.k * static_cast<double>(j + 1);
    }
    std::vector<double> cheb = monomial_to_cheb(MonoPoly(std::move(mono)), scale);
    cheb.resize(order + 1, 0.0);
    q.factors.emplace_back(scale, std::move(cheb));
  }
  return q;
}

double bounding_constant(double t, int k, long l, double c) {
  if (!(t > 0.0) || k < 1 || l < 1 || !(c > 0.0))
    throw std::invalid_argument("bounding_constant: parameters out of range");
  double base = c * std::exp(t * t / 4.0);
  if (t <= static_cast<double>(k) || t < 1.0) return base;
  return base * std::pow(t / k, static_cast<double>((1L << k) * l));
}

nlohmann::json flat_params_to_json(const FlatParams& p) {
  return {{"eps", p.eps}, {"eta", p.eta}, {"t", p.t},
          {"k", p.k},     {"l", p.l},     {"degree_bound", p.degree_bound}};
}

nlohmann::json flat_report_to_json(const FlatReport& r) {
  return {
      {"schema", "flatcheb.flat_report/1"},
      {"params", flat_params_to_json(r.params)},
      {"max_abs_err", r.max_abs_err},
      {"max_flat_ratio", r.max_flat_ratio},
      {"interior_ratio_excess", r.interior_ratio_excess},
      {"right_tail_dominated", r.right_tail_dominated},
      {"grid",
       {{"interior_points", r.grid.interior_points},
        {"extent", r.grid.extent},
        {"tail_points", r.grid.tail_points}}},
      {"accuracy_pass", r.accuracy_pass},
      {"flatness_pass", r.flatness_pass},
      {"pass", r.pass},
  };
}

}  // namespace flatcheb
