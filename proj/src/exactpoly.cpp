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

#include "flatcheb/exactpoly.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace flatcheb {

namespace {
const Int kZeroInt = 0;
}

int ZPoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != 0) return i;
  return 0;
}

const Int& ZPoly::lc() const {
  if (c.empty()) return kZeroInt;
  return c[degree()];
}

Rat ZPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

void ZPoly::trim() {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.c.empty() || b.c.empty()) return ZPoly{};
  ZPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

ZPoly operator*(const Int& s, const ZPoly& a) {
  ZPoly r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

ZPoly derivative(const ZPoly& a) {
  if (a.c.size() <= 1) return ZPoly{{Int(0)}};
  ZPoly r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = Int(i) * a.c[i];
  return r;
}

Int content(const ZPoly& a) {
  Int g = 0;
  for (const auto& x : a.c) {
    g = boost::multiprecision::gcd(g, x);
    if (g == 1) break;
  }
  return g < 0 ? Int(-g) : g;
}

ZPoly primitive_part(const ZPoly& a) {
  Int g = content(a);
  if (g == 0 || g == 1) return a;
  ZPoly r = a;
  for (auto& x : r.c) x /= g;
  return r;
}

int RatPoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != 0) return i;
  return 0;
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

double RatPoly::eval_double(double x) const {
  double acc = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    acc = acc * x + rat_to_double(c[i]);
  return acc;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.c.empty() || b.c.empty()) return RatPoly{};
  RatPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
  RatPoly r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

ZPoly to_integer_poly(const RatPoly& a) {
  Int l = 1;
  for (const auto& q : a.c) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
  ZPoly z;
  z.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) {
    Rat scaled = a.c[i] * l;
    z.c[i] = boost::multiprecision::numerator(scaled);
  }
  return primitive_part(z);
}

ZPoly cheb_T_zpoly(int n) {
  if (n < 0) throw std::invalid_argument("cheb_T_zpoly: n < 0");
  ZPoly t0{{Int(1)}};
  if (n == 0) return t0;
  ZPoly t1{{Int(0), Int(1)}};
  if (n == 1) return t1;
  ZPoly x2{{Int(0), Int(2)}};
  for (int i = 2; i <= n; ++i) {
    ZPoly t2 = x2 * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

ZPoly cheb_U_zpoly(int n) {
  if (n < 0) throw std::invalid_argument("cheb_U_zpoly: n < 0");
  ZPoly u0{{Int(1)}};
  if (n == 0) return u0;
  ZPoly u1{{Int(0), Int(2)}};
  if (n == 1) return u1;
  ZPoly x2{{Int(0), Int(2)}};
  for (int i = 2; i <= n; ++i) {
    ZPoly u2 = x2 * u1 - u0;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return u1;
}

namespace {

// Pseudo-remainder of f by g with the dividend premultiplied by lc(g)^e where
// e >= deg(f)-deg(g)+1 is even, so the scaling is positive for any sign of lc(g).
// Exact integer synthetic division.
ZPoly sign_safe_prem(const ZPoly& f, const ZPoly& g) {
  int df = f.degree(), dg = g.degree();
  if (df < dg) return f;
  int e = df - dg + 1;
  if (e % 2 == 1) ++e;
  Int l = g.lc();
  Int mult = 1;
  for (int i = 0; i < e; ++i) mult *= l;

  std::vector<Int> r(f.c.begin(), f.c.begin() + df + 1);
  for (auto& x : r) x *= mult;
  for (int k = df; k >= dg; --k) {
    if (r[k] == 0) continue;
    Int q = r[k] / l;  // exact by construction
    r[k] = 0;
    for (int j = 0; j < dg; ++j) r[k - dg + j] -= q * g.c[j];
  }
  r.resize(std::max(dg, 1));
  ZPoly out{std::move(r)};
  out.trim();
  return out;
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

SturmChain build_sturm_chain(const ZPoly& p) {
  SturmChain chain;
  ZPoly s0 = primitive_part(p);
  s0.trim();
  chain.polys.push_back(s0);
  if (s0.degree() == 0) return chain;
  ZPoly s1 = primitive_part(derivative(s0));
  s1.trim();
  chain.polys.push_back(s1);
  while (chain.polys.back().degree() > 0 || !chain.polys.back().is_zero()) {
    const ZPoly& a = chain.polys[chain.polys.size() - 2];
    const ZPoly& b = chain.polys.back();
    if (b.is_zero()) break;
    if (b.degree() == 0) break;
    ZPoly rem = sign_safe_prem(a, b);
    if (rem.is_zero()) break;
    ZPoly next = primitive_part(rem);
    for (auto& x : next.c) x = -x;
    chain.polys.push_back(std::move(next));
  }
  return chain;
}

int SturmChain::variations_at(const Rat& x) const {
  std::vector<int> signs;
  signs.reserve(polys.size());
  for (const auto& p : polys) signs.push_back(p.sign_at(x));
  return count_variations(signs);
}

int SturmChain::variations_at_minus_inf() const {
  std::vector<int> signs;
  signs.reserve(polys.size());
  for (const auto& p : polys) {
    int d = p.degree();
    int s = sgn(p.lc());
    if (d % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

long sturm_root_count(const SturmChain& chain, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("sturm_root_count: need a < b");
  if (chain.polys.empty()) return 0;
  if (chain.polys.front().sign_at(a) == 0)
    throw std::domain_error("sturm_root_count: p(a) = 0");
  return chain.variations_at(a) - chain.variations_at(b);
}

long sturm_root_count_from_minus_inf(const SturmChain& chain, const Rat& b) {
  if (chain.polys.empty()) return 0;
  return chain.variations_at_minus_inf() - chain.variations_at(b);
}

}  // namespace flatcheb
