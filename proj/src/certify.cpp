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

#include "flatcheb/certify.hpp"

#include <algorithm>
#include <stdexcept>

#include "flatcheb/bessel.hpp"
#include "flatcheb/parallel.hpp"

namespace flatcheb {

namespace {

int approx_log2(const Rat& q) {
  if (q == 0) return 0;
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  if (num < 0) num = -num;
  return static_cast<int>(boost::multiprecision::msb(num)) -
         static_cast<int>(boost::multiprecision::msb(den));
}

int hint_bits_for(const EnclosedReal& e) {
  Rat w = e.width();
  if (w == 0) return 64;
  Rat m = e.mid();
  if (m == 0) return 64;
  if (m < 0) m = -m;
  int gap = approx_log2(w) - approx_log2(m);
  return std::max(64, gap + 8);
}

}  // namespace

IntervalPoly::IntervalPoly(std::vector<EnclosedReal> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && coeffs.back().lo == 0 && coeffs.back().hi == 0)
    coeffs.pop_back();
  if (coeffs.empty()) throw std::invalid_argument("IntervalPoly: empty");
  if (coeffs.size() > 1 && coeffs.back().sign() == 0)
    throw std::invalid_argument(
        "IntervalPoly: leading enclosure contains zero (degree ambiguous); "
        "shrink the coefficient tolerance");
}

bool IntervalPoly::is_exact() const {
  for (const auto& c : coeffs)
    if (!c.is_point()) return false;
  return true;
}

EnclosedReal IntervalPoly::eval(const Rat& x) const {
  EnclosedReal acc(Rat(0));
  EnclosedReal xe{x};
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    acc = acc * xe + coeffs[i];
  return acc;
}

IntervalPoly build_GN(int N, const Rat& tol) {
  if (N < 2) throw std::invalid_argument("build_GN: N must be at least 2");
  if (tol <= 0) throw std::invalid_argument("build_GN: tol must be positive");
  EnclosedReal IN = bessel_I(static_cast<unsigned>(N), Rat(1), tol);
  EnclosedReal IN1 = bessel_I(static_cast<unsigned>(N + 1), Rat(1), tol);
  ZPoly A = cheb_U_zpoly(N - 1);
  ZPoly B = cheb_U_zpoly(N - 2);
  B.c[0] -= 1;
  B = B + cheb_T_zpoly(N);
  std::vector<EnclosedReal> coeffs(N + 1, EnclosedReal(Rat(0)));
  for (size_t i = 0; i < A.c.size(); ++i)
    if (A.c[i] != 0) coeffs[i] = coeffs[i] + Rat(A.c[i]) * IN1;
  for (size_t i = 0; i < B.c.size(); ++i)
    if (B.c[i] != 0) coeffs[i] = coeffs[i] + Rat(B.c[i]) * IN;
  return IntervalPoly(std::move(coeffs));
}

Rat cauchy_bound(const IntervalPoly& p) {
  int d = p.degree();
  Rat lead_inner = p.coeffs[d].abs_lower();
  if (lead_inner == 0)
    throw std::domain_error("cauchy_bound: leading coefficient not certified nonzero");
  Rat worst(0);
  for (int i = 0; i < d; ++i) worst = std::max(worst, p.coeffs[i].abs_upper());
  return Rat(1) + worst / lead_inner;
}

// ---------------------------------------------------------------------------
// Interval Sturm chain (rational interval coefficients).

namespace {

using IPolyVec = std::vector<EnclosedReal>;

void inormalize(IPolyVec& p) {
  // Divide by a positive power of two near the largest magnitude; sign-safe.
  Rat biggest(0);
  for (const auto& c : p) biggest = std::max(biggest, c.abs_upper());
  if (biggest == 0) return;
  int e = approx_log2(biggest);
  if (e == 0) return;
  Rat scale = e > 0 ? Rat(1, Int(1) << e) : Rat(Int(1) << (-e));
  for (auto& c : p) c = scale * c;
}

// Trim exact-zero leading coefficients. Returns false (indeterminate) if the
// leading survivor straddles zero with nonzero width.
bool itrim(IPolyVec& p) {
  while (p.size() > 1 && p.back().lo == 0 && p.back().hi == 0) p.pop_back();
  if (p.size() > 1 && p.back().sign() == 0) return false;
  return true;
}

bool is_zero_poly(const IPolyVec& p) {
  for (const auto& c : p)
    if (!(c.lo == 0 && c.hi == 0)) return false;
  return true;
}

// Remainder of f by g, interval long division. Caller guarantees lc(g) has a
// certified sign.
IPolyVec irem(IPolyVec f, const IPolyVec& g) {
  int n = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= n) {
    int m = static_cast<int>(f.size()) - 1;
    EnclosedReal q = f[m] / g[n];
    f.pop_back();
    for (int j = 0; j < n; ++j)
      f[m - n + j] = f[m - n + j] - q * g[j];
  }
  return f;
}

struct IntervalChain {
  std::vector<IPolyVec> polys;
  bool determinate = true;
  int offending_index = -1;
  EnclosedReal offender;
};

IntervalChain build_interval_chain(const IntervalPoly& p) {
  IntervalChain chain;
  IPolyVec s0 = p.coeffs;
  if (!itrim(s0)) {
    chain.determinate = false;
    chain.offending_index = 0;
    chain.offender = s0.back();
    return chain;
  }
  inormalize(s0);
  chain.polys.push_back(s0);
  if (s0.size() <= 1) return chain;
  IPolyVec s1(s0.size() - 1);
  for (size_t i = 1; i < s0.size(); ++i) s1[i - 1] = Rat(Int(i)) * s0[i];
  if (!itrim(s1)) {
    chain.determinate = false;
    chain.offending_index = 1;
    chain.offender = s1.back();
    return chain;
  }
  inormalize(s1);
  chain.polys.push_back(s1);
  while (chain.polys.back().size() > 1) {
    const IPolyVec& a = chain.polys[chain.polys.size() - 2];
    const IPolyVec& b = chain.polys.back();
    IPolyVec r = irem(a, b);
    if (is_zero_poly(r)) break;  // gcd reached
    for (auto& c : r) c = -c;
    if (!itrim(r)) {
      chain.determinate = false;
      chain.offending_index = static_cast<int>(chain.polys.size());
      chain.offender = r.back();
      return chain;
    }
    inormalize(r);
    chain.polys.push_back(std::move(r));
  }
  return chain;
}

// Sign sequence at x; straddles report the chain index. Exact zeros are
// skipped by the variation counter, as usual.
bool interval_signs_at(const IntervalChain& chain, const Rat& x,
                       std::vector<int>* signs, int* bad_index,
                       EnclosedReal* offender) {
  signs->clear();
  EnclosedReal xe{x};
  for (size_t k = 0; k < chain.polys.size(); ++k) {
    EnclosedReal acc(Rat(0));
    const IPolyVec& p = chain.polys[k];
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * xe + p[i];
    if (acc.lo == 0 && acc.hi == 0) {
      signs->push_back(0);
    } else if (acc.sign() == 0) {
      *bad_index = static_cast<int>(k);
      *offender = acc;
      return false;
    } else {
      signs->push_back(acc.sign());
    }
  }
  return true;
}

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

SturmResult interval_sturm_count(const IntervalPoly& p, const Rat& a, const Rat& b) {
  SturmResult res;
  IntervalChain chain = build_interval_chain(p);
  if (!chain.determinate) {
    res.offending_index = chain.offending_index;
    res.precision_hint_bits = hint_bits_for(chain.offender);
    return res;
  }
  std::vector<int> sa, sb;
  int bad = -1;
  EnclosedReal off;
  if (!interval_signs_at(chain, a, &sa, &bad, &off) ||
      !interval_signs_at(chain, b, &sb, &bad, &off)) {
    res.offending_index = bad;
    res.precision_hint_bits = hint_bits_for(off);
    return res;
  }
  res.determinate = true;
  res.count = variations(sa) - variations(sb);
  return res;
}

SturmResult exact_sturm_count(const IntervalPoly& p, const Rat& a, const Rat& b) {
  RatPoly rp;
  rp.c.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) rp.c.push_back(c.lo);
  ZPoly z = to_integer_poly(rp);
  SturmChain chain = build_sturm_chain(z);
  SturmResult res;
  res.determinate = true;
  res.count = sturm_root_count(chain, a, b);
  return res;
}

}  // namespace

SturmResult sturm_count(const IntervalPoly& p, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("sturm_count: need a < b");
  EnclosedReal pa = p.eval(a);
  EnclosedReal pb = p.eval(b);
  if ((pa.lo == 0 && pa.hi == 0) || (pb.lo == 0 && pb.hi == 0))
    throw std::domain_error("sturm_count: p vanishes at an endpoint");
  if (pa.sign() == 0 || pb.sign() == 0) {
    SturmResult res;
    res.offending_index = 0;
    res.precision_hint_bits = hint_bits_for(pa.sign() == 0 ? pa : pb);
    return res;
  }
  if (p.is_exact()) return exact_sturm_count(p, a, b);
  return interval_sturm_count(p, a, b);
}

// ---------------------------------------------------------------------------
// Reduction-theorem certification.

namespace {

struct EnvelopeVerdict {
  bool determinate = false;
  long open_roots = 0;  // distinct roots in (-inf, -1)
  int sign_inner = 0;   // at -1 - 1/1024
  int sign_outer = 0;   // at -R - 1
  int sign_at_minus_inf = 0;
};

// Exact analysis of env = re * A + B on (-inf, -1). The window midpoint is
// m = -1 - 1/1024; the strip (m, -1] is counted separately so every endpoint
// stays an exact rational away from -1, where the theorem's interval is open.
EnvelopeVerdict analyze_envelope(const Rat& re, const ZPoly& A, const ZPoly& B,
                                 const Rat& m, const Rat& a_end) {
  EnvelopeVerdict v;
  RatPoly env;
  size_t len = std::max(A.c.size(), B.c.size());
  env.c.assign(len, Rat(0));
  for (size_t i = 0; i < A.c.size(); ++i) env.c[i] += re * A.c[i];
  for (size_t i = 0; i < B.c.size(); ++i) env.c[i] += B.c[i];
  ZPoly z = to_integer_poly(env);

  int s_m = z.sign_at(m);
  int s_b = z.sign_at(Rat(-1));
  if (s_m == 0 || s_b == 0) return v;  // endpoint degenerate; refine
  SturmChain chain = build_sturm_chain(z);
  int v_inf = chain.variations_at_minus_inf();
  int v_m = chain.variations_at(m);
  int v_b = chain.variations_at(Rat(-1));
  // Every root lies in [-R, R] (Cauchy), so roots in (-inf, m] equal roots in
  // (-R-1, m]; s_b != 0 means -1 itself is not a root, so the strip count
  // (m, -1] is the open-strip count.
  long roots_main = v_inf - v_m;
  long roots_strip = v_m - v_b;
  v.determinate = true;
  v.open_roots = roots_main + roots_strip;
  v.sign_inner = s_m;
  v.sign_outer = z.sign_at(a_end);
  int d = z.degree();
  v.sign_at_minus_inf = sgn(z.lc()) * (d % 2 == 0 ? 1 : -1);
  return v;
}

}  // namespace

Certificate certify_sign(int N, int max_bits, int start_bits) {
  if (N < 2) throw std::invalid_argument("certify_sign: N must be at least 2");
  if (start_bits < 8 || start_bits > max_bits)
    throw std::invalid_argument("certify_sign: bad precision bounds");
  Certificate cert;
  cert.N = N;
  cert.even = (N % 2 == 0);
  cert.claim = cert.even ? SignClaim::Positive : SignClaim::Negative;
  const int claim_sign = cert.even ? 1 : -1;

  ZPoly A = cheb_U_zpoly(N - 1);
  ZPoly B = cheb_U_zpoly(N - 2);
  B.c[0] -= 1;
  B = B + cheb_T_zpoly(N);
  const Rat m = Rat(-1) - Rat(1, 1024);

  for (int bits = start_bits; bits <= max_bits; bits *= 2) {
    cert.bits = bits;
    Rat rel(1, Int(1) << bits);
    EnclosedReal IN = bessel_I_rel(static_cast<unsigned>(N), Rat(1), rel);
    EnclosedReal IN1 = bessel_I_rel(static_cast<unsigned>(N + 1), Rat(1), rel);
    EnclosedReal r = (IN1 / IN).outward_round(static_cast<unsigned>(bits));

    // G_N / I_N(1) = r U_{N-1} + (U_{N-2} - 1 + T_N) with only r enclosed.
    std::vector<EnclosedReal> coeffs(N + 1, EnclosedReal(Rat(0)));
    for (size_t i = 0; i < A.c.size(); ++i)
      if (A.c[i] != 0) coeffs[i] = coeffs[i] + Rat(A.c[i]) * r;
    for (size_t i = 0; i < B.c.size(); ++i)
      if (B.c[i] != 0) coeffs[i] = coeffs[i] + EnclosedReal(Rat(B.c[i]));
    IntervalPoly G(std::move(coeffs));
    cert.cauchy_radius = cauchy_bound(G);
    Rat a_end = -cert.cauchy_radius - 1;

    // G/I_N is monotone in r at every fixed x, so its value always lies
    // between the two exact envelope polynomials; a common certified sign of
    // both envelopes on the window is a certified sign of G_N there.
    EnvelopeVerdict lo = analyze_envelope(r.lo, A, B, m, a_end);
    EnvelopeVerdict hi = analyze_envelope(r.hi, A, B, m, a_end);
    if (!lo.determinate || !hi.determinate) continue;

    cert.root_count_in_window = std::max(lo.open_roots, hi.open_roots);
    cert.sign_at_inner = lo.sign_inner;
    cert.sign_at_outer = lo.sign_outer;
    bool ok = true;
    for (const EnvelopeVerdict& v : {lo, hi}) {
      ok = ok && v.open_roots == 0 && v.sign_inner == claim_sign &&
           v.sign_outer == claim_sign && v.sign_at_minus_inf == claim_sign;
    }
    if (ok) {
      cert.status = CertStatus::Certified;
      return cert;
    }
    // Determinate envelopes that disagree with the claim: decide between a
    // genuine refutation and an enclosure that is still too wide.
    int gm = G.eval(m).sign();
    if (gm != 0 && gm != claim_sign) {
      cert.status = CertStatus::Refuted;
      return cert;
    }
    if (lo.sign_inner == hi.sign_inner && lo.sign_inner == claim_sign &&
        lo.open_roots == hi.open_roots && lo.open_roots > 0) {
      // Both envelopes see the same interior sign change; the family genuinely
      // crosses zero in the window.
      cert.status = CertStatus::Refuted;
      return cert;
    }
  }
  cert.status = CertStatus::Indeterminate;
  return cert;
}

std::vector<Certificate> certify_range_serial(int from, int to, int max_bits) {
  if (from < 2 || to < from) throw std::invalid_argument("certify_range: bad range");
  std::vector<Certificate> out(to - from + 1);
  for (int n = from; n <= to; ++n) out[n - from] = certify_sign(n, max_bits);
  return out;
}

std::vector<Certificate> certify_range(int from, int to, int max_bits, bool parallel) {
  if (!parallel) return certify_range_serial(from, to, max_bits);
  if (from < 2 || to < from) throw std::invalid_argument("certify_range: bad range");
  std::vector<Certificate> out(to - from + 1);
  // Large N dominates; hand indices out dynamically from the top.
#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_threads())
  for (int i = 0; i < static_cast<int>(out.size()); ++i) {
    int n = to - i;
    out[n - from] = certify_sign(n, max_bits);
  }
  return out;
}

const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Refuted: return "refuted";
    default: return "indeterminate";
  }
}

const char* to_string(SignClaim c) {
  return c == SignClaim::Positive ? "positive" : "negative";
}

nlohmann::json certificate_to_json(const Certificate& c) {
  return {
      {"schema", "flatcheb.certificate/1"},
      {"N", c.N},
      {"parity", c.even ? "even" : "odd"},
      {"claim", to_string(c.claim)},
      {"cauchy_radius",
       {{"rational", c.cauchy_radius.str()},
        {"approx", rat_to_double(c.cauchy_radius)}}},
      {"root_count_in_window", c.root_count_in_window},
      {"endpoint_signs",
       {{"at_inner", c.sign_at_inner}, {"at_outer", c.sign_at_outer}}},
      {"status", to_string(c.status)},
      {"bits", c.bits},
  };
}

}  // namespace flatcheb
