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

#ifndef FLATCHEB_BESSEL_HPP
#define FLATCHEB_BESSEL_HPP

#include "flatcheb/numeric.hpp"

namespace flatcheb {

/// Rational enclosure of the modified Bessel function of the first kind
/// I_v(x) = sum_m (x/2)^{2m+v} / (m! (m+v)!) for integer v >= 0 and x > 0.
/// Partial sums are exact; the tail is bounded by a geometric majorant that
/// kicks in at the first index where the term ratio drops below 1/2.
/// Width of the result is at most tol; throws EnclosureError (with the
/// achieved width) if the iteration budget runs out first.
EnclosedReal bessel_I(unsigned v, const Rat& x, const Rat& tol);

/// bessel_I with a tolerance relative to the (exact) leading term (x/2)^v/v!,
/// which is a lower bound for I_v(x).
EnclosedReal bessel_I_rel(unsigned v, const Rat& x, const Rat& rel_tol);

/// Plain double approximation for non-certified paths.
double bessel_I_approx(unsigned v, double x);

enum class BoundCheck { Holds, Fails, Indeterminate };

/// Certified check of (x/2)^v/v! < I_v(x) < cosh(x) (x/2)^v/v!.
/// Indeterminate means the enclosures stayed too wide to decide the strict
/// inequalities; it is distinct from Fails.
BoundCheck check_bessel_bounds(unsigned v, const Rat& x);

}  // namespace flatcheb

#endif  // FLATCHEB_BESSEL_HPP
