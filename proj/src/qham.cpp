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

#include "flatcheb/qham.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace flatcheb {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

const char kLetterNames[] = "IXYZ";

// Single-qubit products: result letter and phase exponent of i.
// Order: I, X, Y, Z.
constexpr std::uint8_t kMulLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr std::uint8_t kMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

Eigen::Matrix2cd letter_matrix(PauliLetter l) {
  Eigen::Matrix2cd m;
  switch (l) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, -kI, kI, 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

PauliString::PauliString(int n_, std::vector<PauliLetter> letters_)
    : n(n_), letters(std::move(letters_)) {
  if (n < 1 || letters.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("PauliString: letter count must equal qubit count");
}

PauliString PauliString::parse(const std::string& word) {
  std::vector<PauliLetter> letters;
  letters.reserve(word.size());
  for (char c : word) {
    switch (c) {
      case 'I': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default: throw std::invalid_argument("PauliString::parse: bad letter");
    }
  }
  return PauliString(static_cast<int>(word.size()), std::move(letters));
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (int i = 0; i < n; ++i)
    if (letters[i] != PauliLetter::I) s.push_back(i);
  return s;
}

int PauliString::weight() const {
  int w = 0;
  for (auto l : letters)
    if (l != PauliLetter::I) ++w;
  return w;
}

std::string PauliString::str() const {
  std::string s(n, 'I');
  for (int i = 0; i < n; ++i) s[i] = kLetterNames[static_cast<int>(letters[i])];
  return s;
}

bool pauli_less(const PauliString& a, const PauliString& b) {
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  return a.letters < b.letters;
}

std::complex<double> PauliProduct::phase() const {
  switch (phase_pow & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

PauliProduct pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw std::invalid_argument("pauli_mul: size mismatch");
  PauliProduct out;
  std::vector<PauliLetter> letters(a.n);
  int phase = 0;
  for (int i = 0; i < a.n; ++i) {
    int la = static_cast<int>(a.letters[i]);
    int lb = static_cast<int>(b.letters[i]);
    letters[i] = static_cast<PauliLetter>(kMulLetter[la][lb]);
    phase += kMulPhase[la][lb];
  }
  out.phase_pow = phase & 3;
  out.string = PauliString(a.n, std::move(letters));
  return out;
}

MatrixXcd to_dense(const PauliString& p, int qubit_cap) {
  if (p.n > qubit_cap) throw std::domain_error("to_dense: qubit cap exceeded");
  // Accumulate innermost-first so letters[0] ends up as the outermost factor
  // (most significant bit of the dense index).
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (int i = p.n - 1; i >= 0; --i) {
    Eigen::Matrix2cd l = letter_matrix(p.letters[i]);
    MatrixXcd next(m.rows() * 2, m.cols() * 2);
    next.topLeftCorner(m.rows(), m.cols()) = l(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = l(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = l(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = l(1, 1) * m;
    m = std::move(next);
  }
  return m;
}

LocalHamiltonian::LocalHamiltonian(int n_, int locality_, std::vector<PauliString> terms_,
                                   std::vector<double> couplings_)
    : n(n_), locality(locality_), terms(std::move(terms_)), couplings(std::move(couplings_)) {
  if (terms.size() != couplings.size())
    throw std::invalid_argument("LocalHamiltonian: term/coupling count mismatch");
  if (terms.empty()) throw std::invalid_argument("LocalHamiltonian: no terms");
  for (const auto& t : terms) {
    if (t.n != n) throw std::invalid_argument("LocalHamiltonian: term qubit mismatch");
    if (t.weight() > locality)
      throw std::invalid_argument("LocalHamiltonian: term exceeds locality");
  }
  for (double c : couplings)
    if (!(std::abs(c) <= 1.0))
      throw std::invalid_argument("LocalHamiltonian: couplings must lie in [-1, 1]");
}

MatrixXcd to_dense(const LocalHamiltonian& h, int qubit_cap) {
  if (h.n > qubit_cap) throw std::domain_error("to_dense: qubit cap exceeded");
  long dim = 1L << h.n;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (std::size_t a = 0; a < h.terms.size(); ++a)
    m += h.couplings[a] * to_dense(h.terms[a], qubit_cap);
  return m;
}

InteractionGraph interaction_graph(const LocalHamiltonian& h) {
  InteractionGraph g;
  g.m = h.term_count();
  g.adj.assign(g.m, {});
  std::vector<std::vector<int>> supports(g.m);
  for (int a = 0; a < g.m; ++a) supports[a] = h.terms[a].support();
  for (int a = 0; a < g.m; ++a) {
    for (int b = a + 1; b < g.m; ++b) {
      bool overlap = false;
      for (int qa : supports[a]) {
        for (int qb : supports[b])
          if (qa == qb) {
            overlap = true;
            break;
          }
        if (overlap) break;
      }
      if (overlap) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
      }
    }
  }
  for (const auto& nb : g.adj)
    g.max_degree = std::max(g.max_degree, static_cast<int>(nb.size()));
  return g;
}

PauliSetResult pauli_set_klG(const LocalHamiltonian& h, int l, std::size_t cap,
                             bool allow_truncation) {
  if (l < 1) throw std::invalid_argument("pauli_set_klG: l must be at least 1");
  int m = h.term_count();
  int take = std::min(l, m);

  std::set<std::string> seen;
  std::vector<PauliString> all;
  // Enumerate size-`take` subsets, generate every string on the union support.
  std::vector<int> idx(take);
  for (int i = 0; i < take; ++i) idx[i] = i;
  while (true) {
    std::vector<int> uni;
    for (int i : idx)
      for (int q : h.terms[i].support()) uni.push_back(q);
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    std::size_t count = 1;
    for (std::size_t j = 0; j < uni.size(); ++j) count *= 4;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<PauliLetter> letters(h.n, PauliLetter::I);
      std::size_t c = code;
      for (int q : uni) {
        letters[q] = static_cast<PauliLetter>(c & 3);
        c >>= 2;
      }
      PauliString p(h.n, std::move(letters));
      if (seen.insert(p.str()).second) all.push_back(std::move(p));
    }
    // next combination
    int i = take - 1;
    while (i >= 0 && idx[i] == m - take + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
  }

  std::sort(all.begin(), all.end(), pauli_less);
  PauliSetResult out;
  if (all.size() > cap) {
    if (!allow_truncation)
      throw std::length_error("pauli_set_klG: enumeration cap exceeded");
    all.resize(cap);
    out.truncated = true;
  }
  out.strings = std::move(all);
  return out;
}

MatrixXcd matrix_exp_hermitian(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  Eigen::VectorXd evals = es.eigenvalues();
  Eigen::VectorXcd expd(evals.size());
  for (int i = 0; i < evals.size(); ++i) expd(i) = std::exp(evals(i));
  return es.eigenvectors() * expd.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix gibbs_state(const LocalHamiltonian& h, double beta, int qubit_cap) {
  if (beta < 0.0) throw std::invalid_argument("gibbs_state: beta must be nonnegative");
  MatrixXcd hm = to_dense(h, qubit_cap);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hm);
  Eigen::VectorXd evals = es.eigenvalues();
  double shift = (-beta * evals).maxCoeff();
  Eigen::VectorXd w(evals.size());
  for (int i = 0; i < evals.size(); ++i) w(i) = std::exp(-beta * evals(i) - shift);
  w /= w.sum();
  DensityMatrix rho;
  rho.rho = es.eigenvectors() * w.cast<std::complex<double>>().asDiagonal() *
            es.eigenvectors().adjoint();
  return rho;
}

MatrixXcd nested_comm(const MatrixXcd& x, const MatrixXcd& a, int i) {
  if (x.rows() != x.cols() || a.rows() != a.cols() || x.rows() != a.rows())
    throw std::invalid_argument("nested_comm: dimension mismatch");
  if (i < 0) throw std::invalid_argument("nested_comm: negative order");
  MatrixXcd cur = a;
  for (int k = 0; k < i; ++k) cur = x * cur - cur * x;
  return cur;
}

MatrixXcd comm_poly_apply(const MonoPoly& p, const MatrixXcd& x, const MatrixXcd& a) {
  if (x.rows() != x.cols() || a.rows() != a.cols() || x.rows() != a.rows())
    throw std::invalid_argument("comm_poly_apply: dimension mismatch");
  MatrixXcd acc = p.coeffs[0] * a;
  MatrixXcd cur = a;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
    cur = x * cur - cur * x;
    if (p.coeffs[i] != 0.0) acc += p.coeffs[i] * cur;
  }
  return acc;
}

MatrixXcd comm_poly_apply2(const std::vector<std::vector<double>>& c, const MatrixXcd& x,
                           const MatrixXcd& y, const MatrixXcd& a) {
  MatrixXcd acc = MatrixXcd::Zero(a.rows(), a.cols());
  MatrixXcd yj = a;  // [Y, A]_j
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) yj = y * yj - yj * y;
    MatrixXcd xi = yj;  // [X, [Y, A]_j]_i
    for (std::size_t i = 0; i < c[j].size(); ++i) {
      if (i > 0) xi = x * xi - xi * x;
      if (c[j][i] != 0.0) acc += c[j][i] * xi;
    }
  }
  return acc;
}

MatrixXcd apply_flat_comm(const FlatApprox& q, const MatrixXcd& x, const MatrixXcd& a) {
  // Factors are polynomials in the same superoperator ad_x, so the product is
  // the composition: apply each factor by a Clenshaw recurrence where the
  // variable acts as B -> (x B - B x) / scale.
  MatrixXcd cur = a;
  for (const ChebSeries& f : q.factors) {
    double inv_scale = 1.0 / f.scale;
    const std::vector<double>& c = f.coeffs;
    MatrixXcd b1 = MatrixXcd::Zero(a.rows(), a.cols());
    MatrixXcd b2 = b1;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
      MatrixXcd ad_b1 = inv_scale * (x * b1 - b1 * x);
      MatrixXcd bk = 2.0 * ad_b1 - b2 + c[k] * cur;
      b2 = std::move(b1);
      b1 = std::move(bk);
    }
    MatrixXcd ad_b1 = inv_scale * (x * b1 - b1 * x);
    cur = ad_b1 - b2 + c[0] * cur;
  }
  return cur;
}

TraceEstimator TraceEstimator::shot_noise(long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("TraceEstimator: samples must be positive");
  TraceEstimator e;
  e.mode = Mode::ShotNoise;
  e.samples = samples;
  e.seed = seed;
  return e;
}

namespace {
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::complex<double> TraceEstimator::perturb(std::complex<double> value,
                                             std::uint64_t tag) const {
  if (mode == Mode::Exact) return value;
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(tag)));
  std::normal_distribution<double> noise(0.0, 1.0 / std::sqrt(static_cast<double>(samples)));
  return value + std::complex<double>(noise(rng), noise(rng));
}

std::complex<double> TraceEstimator::estimate(const MatrixXcd& m, const DensityMatrix& rho,
                                              std::uint64_t tag) const {
  if (m.rows() != rho.rho.rows() || m.cols() != rho.rho.cols())
    throw std::invalid_argument("TraceEstimator: dimension mismatch");
  return perturb(trace_product(m, rho.rho), tag);
}

std::complex<double> trace_product(const MatrixXcd& a, const MatrixXcd& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace flatcheb
