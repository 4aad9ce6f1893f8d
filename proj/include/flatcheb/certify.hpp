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

#ifndef FLATCHEB_CERTIFY_HPP
#define FLATCHEB_CERTIFY_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "flatcheb/exactpoly.hpp"
#include "flatcheb/numeric.hpp"

namespace flatcheb {

/// Monomial-basis polynomial with enclosure coefficients. The leading
/// enclosure must exclude zero, otherwise the degree is ambiguous and
/// construction fails.
struct IntervalPoly {
  std::vector<EnclosedReal> coeffs;

  explicit IntervalPoly(std::vector<EnclosedReal> c);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_exact() const;  // every coefficient is a point interval
  EnclosedReal eval(const Rat& x) const;
};

/// The sign-test polynomial
///   G_N(x) = I_{N+1}(1) U_{N-1}(x) + I_N(1) (U_{N-2}(x) - 1 + T_N(x)),
/// with both Bessel constants enclosed to width tol and the Chebyshev
/// polynomials expanded exactly over the integers.
IntervalPoly build_GN(int N, const Rat& tol);

/// Cauchy root bound R = 1 + max_i |c_i| / |c_deg| from outer interval bounds;
/// every real root of every polynomial in the enclosure lies in [-R, R].
Rat cauchy_bound(const IntervalPoly& p);

struct SturmResult {
  bool determinate = false;
  long count = 0;              // distinct real roots in (a, b]
  int offending_index = -1;    // chain index of the first undecidable sign
  int precision_hint_bits = 0; // suggested extra enclosure bits on retry
};

/// Distinct real roots of p in (a, b], every sign decision made on enclosures.
/// Exact (point-interval) polynomials run through an integer Sturm chain with
/// content-stripped sign-safe pseudo-remainders; genuine interval polynomials
/// run through a rational interval chain and report indeterminate as soon as
/// any required sign straddles zero.
SturmResult sturm_count(const IntervalPoly& p, const Rat& a, const Rat& b);

enum class SignClaim { Positive, Negative };
enum class CertStatus { Certified, Refuted, Indeterminate };

struct Certificate {
  int N = 0;
  bool even = false;
  SignClaim claim = SignClaim::Positive;  // sign of G_N on (-inf, -1)
  Rat cauchy_radius;
  long root_count_in_window = -1;  // distinct roots found in (-R-1, -1)
  int sign_at_inner = 0;           // sign at -1 - 1/1024
  int sign_at_outer = 0;           // sign at -R - 1
  CertStatus status = CertStatus::Indeterminate;
  int bits = 0;                    // enclosure precision that settled it
};

/// Certify the sign of G_N on (-inf, -1): positive for even N, negative for
/// odd N. Divides G_N by I_N(1) so only the ratio r = I_{N+1}(1)/I_N(1) needs
/// an enclosure, then certifies both exact envelope polynomials r_lo U_{N-1} + B
/// and r_hi U_{N-1} + B; since G/I_N is monotone in r pointwise, a common sign
/// of the envelopes on the window is a sign of every polynomial in the family.
/// Doubles the enclosure precision and retries on indeterminate up to
/// max_bits; never silently claims.
Certificate certify_sign(int N, int max_bits = 4096, int start_bits = 64);

/// Independent certifications, largest N first under OpenMP when parallel.
std::vector<Certificate> certify_range(int from, int to, int max_bits = 4096,
                                       bool parallel = true);
std::vector<Certificate> certify_range_serial(int from, int to, int max_bits = 4096);

nlohmann::json certificate_to_json(const Certificate& c);

const char* to_string(CertStatus s);
const char* to_string(SignClaim c);

}  // namespace flatcheb

#endif  // FLATCHEB_CERTIFY_HPP
