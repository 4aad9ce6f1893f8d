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

#ifndef FLATCHEB_QHAM_HPP
#define FLATCHEB_QHAM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "flatcheb/chebpoly.hpp"
#include "flatcheb/flatexp.hpp"

namespace flatcheb {

using MatrixXcd = Eigen::MatrixXcd;

/// Dense realizations are capped at this many qubits (dimension 1024).
inline constexpr int kDenseQubitCap = 10;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product of single-qubit Pauli matrices. letters[0] acts on qubit 0,
/// which is the most significant bit of the dense index. Operator norm is 1.
struct PauliString {
  int n = 0;
  std::vector<PauliLetter> letters;

  PauliString() = default;
  PauliString(int n_, std::vector<PauliLetter> letters_);
  /// Parse from a word over {I, X, Y, Z}, e.g. "XIZ".
  static PauliString parse(const std::string& word);

  std::vector<int> support() const;
  int weight() const;  // number of non-identity letters
  bool is_identity() const { return weight() == 0; }
  std::string str() const;

  bool operator==(const PauliString& o) const = default;
};

/// Weight-then-lexicographic order; the deterministic enumeration order used
/// everywhere a Pauli set gets capped.
bool pauli_less(const PauliString& a, const PauliString& b);

/// Product of two Pauli strings: a phase i^phase_pow together with the
/// resulting string.
struct PauliProduct {
  int phase_pow = 0;  // phase = i^phase_pow, phase_pow in {0,1,2,3}
  PauliString string;
  std::complex<double> phase() const;
};

PauliProduct pauli_mul(const PauliString& a, const PauliString& b);

MatrixXcd to_dense(const PauliString& p, int qubit_cap = kDenseQubitCap);

/// H = sum_a couplings[a] * terms[a] with |couplings| <= 1 and every term
/// supported on at most `locality` qubits.
struct LocalHamiltonian {
  int n = 0;
  int locality = 0;
  std::vector<PauliString> terms;
  std::vector<double> couplings;

  LocalHamiltonian() = default;
  LocalHamiltonian(int n_, int locality_, std::vector<PauliString> terms_,
                   std::vector<double> couplings_);
  int term_count() const { return static_cast<int>(terms.size()); }
};

MatrixXcd to_dense(const LocalHamiltonian& h, int qubit_cap = kDenseQubitCap);

/// Dual interaction graph: vertices are term indices, edges join terms with
/// overlapping support.
struct InteractionGraph {
  int m = 0;
  std::vector<std::vector<int>> adj;
  int max_degree = 0;
};

InteractionGraph interaction_graph(const LocalHamiltonian& h);

struct PauliSetResult {
  std::vector<PauliString> strings;  // weight-lex sorted, deduplicated
  bool truncated = false;
};

/// All Pauli strings supported inside the union of supports of some size-l
/// subset of the Hamiltonian terms (l is clamped to the term count). The
/// enumeration is capped; exceeding the cap without permission is an error,
/// with permission the weight-lex prefix is returned and flagged.
PauliSetResult pauli_set_klG(const LocalHamiltonian& h, int l, std::size_t cap = 4096,
                             bool allow_truncation = false);

struct DensityMatrix {
  MatrixXcd rho;
};

/// exp(M) for Hermitian M by eigendecomposition.
MatrixXcd matrix_exp_hermitian(const MatrixXcd& m);

/// Gibbs state e^{-beta H} / Tr e^{-beta H}; eigenvalues are shifted by the
/// maximum before exponentiation so the scale stays benign.
DensityMatrix gibbs_state(const LocalHamiltonian& h, double beta,
                          int qubit_cap = kDenseQubitCap);

/// Nested commutator [X, A]_i: [X, A]_0 = A, [X, A]_{i+1} = X [X,A]_i - [X,A]_i X.
MatrixXcd nested_comm(const MatrixXcd& x, const MatrixXcd& a, int i);

/// p(X|A) = sum_i c_i [X, A]_i, one commutator per degree step.
MatrixXcd comm_poly_apply(const MonoPoly& p, const MatrixXcd& x, const MatrixXcd& a);

/// Bivariate form p(X, Y | A) = sum_{ij} c[j][i] [X, [Y, A]_j]_i for a
/// polynomial sum c[j][i] x^i y^j. Utility mirror of the single-variable case.
MatrixXcd comm_poly_apply2(const std::vector<std::vector<double>>& c, const MatrixXcd& x,
                           const MatrixXcd& y, const MatrixXcd& a);

/// Q(X|A) for a flat product approximation, evaluated factor by factor in the
/// Chebyshev basis of ad_X (Clenshaw on the superoperator); avoids the
/// ill-conditioned monomial expansion entirely.
MatrixXcd apply_flat_comm(const FlatApprox& q, const MatrixXcd& x, const MatrixXcd& a);

/// Trace estimator: exact mode returns Tr(M rho); shot-noise mode adds
/// zero-mean Gaussian noise of std 1/sqrt(samples) to both parts,
/// deterministically in (seed, tag) and independent of call order.
struct TraceEstimator {
  enum class Mode { Exact, ShotNoise };
  Mode mode = Mode::Exact;
  long samples = 0;
  std::uint64_t seed = 0;

  static TraceEstimator exact() { return {}; }
  static TraceEstimator shot_noise(long samples, std::uint64_t seed);

  std::complex<double> estimate(const MatrixXcd& m, const DensityMatrix& rho,
                                std::uint64_t tag = 0) const;
  /// The noise model applied to an already-computed exact value; estimate()
  /// is perturb(Tr(m rho), tag).
  std::complex<double> perturb(std::complex<double> value, std::uint64_t tag) const;
  const char* mode_name() const {
    return mode == Mode::Exact ? "exact" : "shot-noise";
  }
};

/// Tr(a b) without forming the product matrix.
std::complex<double> trace_product(const MatrixXcd& a, const MatrixXcd& b);

}  // namespace flatcheb

#endif  // FLATCHEB_QHAM_HPP
