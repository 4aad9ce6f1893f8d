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

#ifndef FLATCHEB_POP_HPP
#define FLATCHEB_POP_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatcheb/qham.hpp"

namespace flatcheb {

/// One monomial of a real polynomial in the couplings: coef * prod lam_a^exps[a].
struct SparseTerm {
  std::vector<int> exps;
  double coef = 0.0;
};

/// A single constraint LHS(lam) <= rhs. The LHS is |linear or trace
/// expression|^2; `poly` carries its symbolic squared expansion when the
/// instance is expandable, and the numeric-path fields always allow direct
/// evaluation against the stored state.
struct Constraint {
  enum class Kind { Commutation, FlatExp, Ball };
  Kind kind = Kind::Commutation;
  double rhs = 0.0;
  bool symbolic = false;
  std::vector<SparseTerm> poly;

  // Commutation: LHS = |sum_a lam_a lin[a]|^2.
  std::vector<std::complex<double>> lin;
  // FlatExp: LHS = |Tr~(B2 Q(-beta H(lam) | B1) rho) - pair_trace|^2.
  int b1 = -1;
  int b2 = -1;
  std::complex<double> pair_trace{0.0, 0.0};
};

const char* to_string(Constraint::Kind k);

struct PopMetadata {
  double beta = 0.0;
  double eps = 0.0;
  double eps0 = 0.0;
  bool eps0_flushed = false;    // formula underflowed; flushed to smallest positive
  bool eps0_overridden = false;
  double CkG = 0.0;
  std::string setA_id;
  std::string setB_id;
  bool setA_truncated = false;
  bool setB_truncated = false;
  std::size_t set_cap_A = 0;
  std::size_t set_cap_B = 0;
  bool flat_requirement_met = false;
  bool flat_requirement_overridden = false;
  long sym_degree_cap = 0;
  bool residual_only = false;  // flat-exp family not expandable symbolically
  std::string trace_mode;
  long trace_samples = 0;
  std::uint64_t trace_seed = 0;
  bool ball_cuts_box = false;  // a ball radius below sqrt(m) was attached
};

/// The assembled polynomial constraint system in the unknown couplings.
struct PopInstance {
  int m = 0;
  LocalHamiltonian ham;  // terms fixed; couplings hold the generating truth
  DensityMatrix rho;     // the measured state (simulated exactly here)
  FlatApprox flat;
  TraceEstimator est;
  std::vector<PauliString> setA;
  std::vector<PauliString> setB;
  std::vector<Constraint> constraints;
  double box_lo = -1.0;
  double box_hi = 1.0;
  std::optional<double> ball_radius;
  bool ball_radius_exact = false;  // radius^2 equals m exactly (the auto rule)
  PopMetadata meta;
};

struct AssembleOptions {
  std::size_t set_cap_A = 6;
  std::size_t set_cap_B = 32;
  std::size_t enumeration_cap = 4096;
  long sym_degree_cap = 10;       // symbolic expansion limit on deg(Q)
  bool override_flat_requirement = false;
  std::optional<double> eps0_override;
};

/// Assemble the constraint system for learning the couplings of H_true from
/// its Gibbs state at inverse temperature beta:
///   (i) for A1, A2 in setA:  |Tr~(A1 A2 (H(lam) rho - rho H(lam)))|^2 <= eps0^2,
///  (ii) for B1, B2 in setB:  |Tr~(B2 Q(-beta H(lam)|B1) rho) - Tr~(B1 B2 rho)|^2 <= eps^2,
/// with eps0 = eps^{10^{CkG beta}} / m^3 and box bounds [-1,1]^m. The flat
/// approximation must meet the (delta, eta, t) requirement derived from
/// (CkG, beta, eps) unless explicitly overridden.
PopInstance assemble_pop(const LocalHamiltonian& h_true, double beta, double eps,
                         double CkG, const TraceEstimator& est, const FlatApprox& flat,
                         const AssembleOptions& opts = {});

/// LHS value of every constraint at the given couplings, by dense evaluation.
std::vector<double> residuals(const PopInstance& pop, const std::vector<double>& lam);
std::vector<double> residuals_serial(const PopInstance& pop, const std::vector<double>& lam);

/// Evaluate the symbolic polynomial of one constraint (requires symbolic).
double eval_constraint_poly(const Constraint& c, const std::vector<double>& lam);

/// Worst violation max_j (LHS_j - rhs_j); feasible iff <= 0.
double max_violation(const PopInstance& pop, const std::vector<double>& lam);

struct LearnOptions {
  int starts = 8;
  int max_iters = 600;
  std::uint64_t seed = 0;
};

struct LearnStartReport {
  int start_index = 0;
  double objective = 0.0;
  int iterations = 0;
  std::vector<double> trajectory;  // objective after each iteration
};

struct LearnReport {
  double objective = 0.0;  // best max-violation found
  bool feasible = false;
  int best_start = 0;
  double wall_time_s = 0.0;
  std::vector<LearnStartReport> starts;
};

/// Multi-start projected compass search minimizing the max violation over the
/// box. Deterministic given the seed; starts run in parallel.
std::pair<std::vector<double>, LearnReport> learn(const PopInstance& pop,
                                                  const LearnOptions& opts = {});

/// Append the redundant ball constraint sum lam_a^2 <= R^2. R below sqrt(m)
/// may cut the box; that is flagged, not rejected.
PopInstance add_ball_constraint(PopInstance pop, double R);
/// The default radius sqrt(m) (box corners exactly on the ball).
double auto_ball_radius(const PopInstance& pop);

/// JSON export of a symbolic instance; throws for residual-only instances.
nlohmann::json export_pop(const PopInstance& pop);
PopInstance import_pop(const nlohmann::json& j);
void export_pop_file(const PopInstance& pop, const std::string& path);
PopInstance import_pop_file(const std::string& path);

}  // namespace flatcheb

#endif  // FLATCHEB_POP_HPP
