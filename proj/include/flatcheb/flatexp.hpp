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

#ifndef FLATCHEB_FLATEXP_HPP
#define FLATCHEB_FLATEXP_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "flatcheb/chebpoly.hpp"

namespace flatcheb {

/// Parameters of a flat product approximation of e^x.
///
/// k and l follow the selection rules k = ceil(1/eta) and
/// l = ceil(((e+1)t + ln(k/eps)) / 2); the product of k truncations at orders
/// 2l, 4l, ..., 2^k l then approximates e^x within eps on [-t, t] while its
/// magnitude stays below max(1, e^x) e^{eta |x|} away from the interval.
struct FlatParams {
  double eps = 0.1;
  double eta = 0.5;
  double t = 1.0;
  int k = 2;
  long l = 4;
  long degree_bound = 24;  // l (2^{k+1} - 2)
};

/// The product Q_{k,l}(x) = prod_i f_{2^i l}(x/k), stored factor-by-factor.
/// The 1/k argument scaling is folded into the factor scale: factor i is the
/// order-2^i*l truncation of the expansion of e^{x/k}, living on scale k*t.
struct FlatApprox {
  FlatParams params;
  std::vector<ChebSeries> factors;
  // Whether the sign certificates for this approximation's truncation orders
  // have been checked (see certify); purely informational, the numeric
  // verification below runs either way.
  bool orders_certified = false;
};

/// Two-sided decay certificate: C1 (t/2)^n / n! <= x_n <= C2 (t/2)^n / n!
/// for every index in [range_lo, range_hi].
struct DecayCert {
  double C1 = 0.0;
  double C2 = 0.0;
  double t = 1.0;
  int range_lo = 0;
  int range_hi = 0;
};

struct DecayOutcome {
  bool ok = false;
  DecayCert cert;
  int offending_index = -1;  // first non-positive coefficient when !ok
};

struct DecayCertExact {
  Rat C1, C2, t;
  int range_lo = 0, range_hi = 0;
};

struct DecayOutcomeExact {
  bool ok = false;
  DecayCertExact cert;
  int offending_index = -1;
};

struct GridSpec {
  int interior_points = 10001;  // uniform on [-t, t]
  double extent = 50.0;         // tails reach extent * t
  int tail_points = 256;        // geometric points per side
};

/// Verification report for the two flatness bullets. The accuracy bullet is
/// checked on [-t, t]; the magnitude bullet on the tails t <= |x| <= extent*t.
/// At x = 0 the magnitude bound equals 1 exactly while the product equals
/// 1 + O(first omitted coefficient), so the interior ratio can exceed 1 by
/// ~1e-9 no matter how accurate the approximation is; it is reported as a
/// separate diagnostic instead of failing the check.
struct FlatReport {
  FlatParams params;
  double max_abs_err = 0.0;            // max |Q - e^x| on [-t, t]
  double max_flat_ratio = 0.0;         // max |Q|/(max(1,e^x) e^{eta|x|}), tails
  double interior_ratio_excess = 0.0;  // max(0, interior ratio - 1)
  bool right_tail_dominated = false;   // Q(x) <= e^x on the x >= t tail
  GridSpec grid;
  bool accuracy_pass = false;
  bool flatness_pass = false;
  bool pass = false;
};

/// Chebyshev coefficients of e^x on [-t, t] through order N:
/// a_0 = I_0(t), a_n = 2 I_n(t). Accurate to at least 1e-15 relative.
ChebSeries exp_cheb_coeffs(double t, int N);

/// Exact-rational variant; coefficients are enclosure midpoints with relative
/// width below 2^-prec_bits.
std::vector<Rat> exp_cheb_coeffs_exact(const Rat& t, int N, int prec_bits);

/// N = ceil(e t + ln(1/eps)); a truncation at this order is within eps on [-t,t].
int choose_truncation_order(double t, double eps);

/// The Taylor counterpart N = ceil(10 t + ln(1/eps)).
int taylor_truncation_order(double t, double eps);

FlatParams choose_flat_params(double eps, double eta, double t);

/// Truncation orders 2l, 4l, ..., 2^k l of the factors of Q_{k,l}.
std::vector<long> truncation_orders(const FlatParams& p);

FlatApprox build_flat(const FlatParams& p);

double eval_flat(const FlatApprox& q, double x);
Float256 eval_flat_ext(const FlatApprox& q, const Float256& x);

struct ExpandedFlat {
  ChebSeries series;
  MonoPoly mono;
};

/// Single-series and monomial forms of Q_{k,l}. Float mode; total degree must
/// be within kMonomialFloatDegreeCap, otherwise use expand_flat_exact.
ExpandedFlat expand_flat(const FlatApprox& q);

struct ExpandedFlatExact {
  Rat scale;
  std::vector<Rat> series_coeffs;
  RatPoly mono;
};

ExpandedFlatExact expand_flat_exact(const FlatParams& p, int prec_bits = 256);

FlatReport verify_flat_property(const FlatApprox& q, const GridSpec& grid = {});
FlatReport verify_flat_property_serial(const FlatApprox& q, const GridSpec& grid = {});

/// (d, C)-boundedness: degree at most d and |c_q| <= C/q! (1 + slack) for all q.
bool verify_bounded(const MonoPoly& p, long d, double C, double slack = 0.0);
bool verify_bounded_exact(const RatPoly& p, long d, const Rat& C_hi);

DecayOutcome check_regular_decay(const std::vector<double>& coeffs, double t);
DecayOutcomeExact check_regular_decay_exact(const std::vector<Rat>& coeffs, const Rat& t);

/// Same product structure with Taylor truncations of e^{x/k} in place of the
/// Chebyshev ones; per-factor orders follow the 10t + ln(1/eps) rule, i.e.
/// l_taylor = ceil((11 t + ln(k/eps)) / 2).
FlatApprox taylor_flat_baseline(double eps, double eta, double t);

/// C_{k,l} = c e^{t^2/4} (t/k)^{2^k l}, collapsing to c e^{t^2/4} when t <= k
/// or t < 1.
double bounding_constant(double t, int k, long l, double c);

nlohmann::json flat_report_to_json(const FlatReport& r);
nlohmann::json flat_params_to_json(const FlatParams& p);

}  // namespace flatcheb

#endif  // FLATCHEB_FLATEXP_HPP
