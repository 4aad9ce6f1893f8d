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

#include "flatcheb/pop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "flatcheb/parallel.hpp"

namespace flatcheb {

const char* to_string(Constraint::Kind k) {
  switch (k) {
    case Constraint::Kind::Commutation: return "commutation";
    case Constraint::Kind::FlatExp: return "flat-exp";
    default: return "ball";
  }
}

namespace {

std::uint64_t pair_tag(std::uint64_t group, std::uint64_t i, std::uint64_t j) {
  return (group << 40) ^ (i << 20) ^ j;
}

// Squared magnitude of a complex-linear form as a real quadratic polynomial.
std::vector<SparseTerm> square_linear_form(const std::vector<std::complex<double>>& lin) {
  int m = static_cast<int>(lin.size());
  std::vector<SparseTerm> poly;
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      double coef = lin[a].real() * lin[b].real() + lin[a].imag() * lin[b].imag();
      if (a != b) coef *= 2.0;
      if (coef == 0.0) continue;
      SparseTerm t;
      t.exps.assign(m, 0);
      t.exps[a] += 1;
      t.exps[b] += 1;
      t.coef = coef;
      poly.push_back(std::move(t));
    }
  }
  return poly;
}

// Symbolic expansion of |Tr~(B2 Q(-beta H(lam)|B1) rho) - pair_trace|^2 as a
// real polynomial in lam. Levels hold matrix coefficients per multiset of term
// indices; each measured word trace lands in one polynomial coefficient.
std::vector<SparseTerm> expand_flat_constraint(
    const PopInstance& pop, const MonoPoly& q_mono, const MatrixXcd& b1,
    const MatrixXcd& b2, const std::complex<double>& pair_trace,
    const std::vector<MatrixXcd>& term_dense, std::uint64_t tag_base) {
  int m = pop.m;
  double beta = pop.meta.beta;
  using Key = std::vector<int>;
  std::map<Key, std::complex<double>> cpoly;

  std::map<Key, MatrixXcd> level;
  level[Key(m, 0)] = b1;
  for (std::size_t i = 0; i < q_mono.coeffs.size(); ++i) {
    if (i > 0) {
      std::map<Key, MatrixXcd> next;
      for (const auto& [alpha, mat] : level) {
        for (int a = 0; a < m; ++a) {
          Key k = alpha;
          k[a] += 1;
          MatrixXcd contrib = -beta * (term_dense[a] * mat - mat * term_dense[a]);
          auto it = next.find(k);
          if (it == next.end())
            next.emplace(std::move(k), std::move(contrib));
          else
            it->second += contrib;
        }
      }
      level = std::move(next);
    }
    double qi = q_mono.coeffs[i];
    if (qi == 0.0) continue;
    std::uint64_t word = 0;
    for (const auto& [alpha, mat] : level) {
      std::complex<double> tau =
          pop.est.estimate(b2 * mat, pop.rho, tag_base ^ (0x51ULL << 32) ^ word++);
      cpoly[alpha] += qi * tau;
    }
  }
  cpoly[Key(m, 0)] -= pair_trace;

  // |P|^2: cross products of the complex coefficients.
  std::map<Key, double> rpoly;
  for (const auto& [a1, c1] : cpoly) {
    for (const auto& [a2, c2] : cpoly) {
      double coef = c1.real() * c2.real() + c1.imag() * c2.imag();
      if (coef == 0.0) continue;
      Key k(m);
      for (int i = 0; i < m; ++i) k[i] = a1[i] + a2[i];
      rpoly[k] += coef;
    }
  }
  std::vector<SparseTerm> out;
  out.reserve(rpoly.size());
  for (auto& [k, coef] : rpoly) {
    if (coef == 0.0) continue;
    out.push_back(SparseTerm{k, coef});
  }
  return out;
}

std::string set_id(const char* family, int l_param, std::size_t cap, bool truncated) {
  std::string s = std::string(family) + "(l=" + std::to_string(l_param) +
                  ")|weight-lex|cap=" + std::to_string(cap);
  if (truncated) s += "|truncated";
  return s;
}

}  // namespace

PopInstance assemble_pop(const LocalHamiltonian& h_true, double beta, double eps,
                         double CkG, const TraceEstimator& est, const FlatApprox& flat,
                         const AssembleOptions& opts) {
  if (!(beta > 0.0)) throw std::invalid_argument("assemble_pop: beta must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("assemble_pop: eps must lie in (0,1)");
  if (!(CkG > 0.0)) throw std::invalid_argument("assemble_pop: CkG must be positive");

  PopInstance pop;
  pop.m = h_true.term_count();
  pop.ham = h_true;
  pop.flat = flat;
  pop.est = est;
  pop.meta.beta = beta;
  pop.meta.eps = eps;
  pop.meta.CkG = CkG;
  pop.meta.trace_mode = est.mode_name();
  pop.meta.trace_samples = est.samples;
  pop.meta.trace_seed = est.seed;
  pop.meta.sym_degree_cap = opts.sym_degree_cap;

  // Requirement on the flat approximation from (CkG, beta, eps):
  // at least (1e-4 2^{CkG beta} ln(1/eps), 5/(CkG beta), 1e-4 eps)-flat.
  double delta_req = 1e-4 * std::pow(2.0, CkG * beta) * std::log(1.0 / eps);
  double eta_req = 5.0 / (CkG * beta);
  double t_req = 1e-4 * eps;
  pop.meta.flat_requirement_met =
      flat.params.eps <= delta_req && flat.params.eta <= eta_req && flat.params.t >= t_req;
  pop.meta.flat_requirement_overridden = opts.override_flat_requirement;
  if (!pop.meta.flat_requirement_met && !opts.override_flat_requirement)
    throw std::invalid_argument(
        "assemble_pop: flat approximation does not meet the derived "
        "(delta, eta, t) requirement; pass the override to proceed");

  // eps0 = eps^{10^{CkG beta}} / m^3 with flush-to-smallest-positive semantics.
  if (opts.eps0_override) {
    pop.meta.eps0 = *opts.eps0_override;
    pop.meta.eps0_overridden = true;
  } else {
    double expo = std::pow(10.0, CkG * beta);
    double e0 = std::exp(expo * std::log(eps)) / std::pow(pop.m, 3);
    if (e0 <= 0.0 || !std::isfinite(e0)) {
      e0 = std::numeric_limits<double>::denorm_min();
      pop.meta.eps0_flushed = true;
    }
    pop.meta.eps0 = e0;
  }

  pop.rho = gibbs_state(h_true, beta);

  // Pauli sets: A = P_{4 CkG l}, B = P_{4k}, both read as the subset-size
  // parameter of kl-G-locality and clamped to the term count.
  int lA = std::max(1, static_cast<int>(std::lround(4.0 * CkG * flat.params.l)));
  int lB = std::max(1, 4 * h_true.locality);
  PauliSetResult setA = pauli_set_klG(h_true, lA, opts.enumeration_cap, true);
  PauliSetResult setB = pauli_set_klG(h_true, lB, opts.enumeration_cap, true);
  pop.meta.setA_truncated = setA.truncated || setA.strings.size() > opts.set_cap_A;
  pop.meta.setB_truncated = setB.truncated || setB.strings.size() > opts.set_cap_B;
  if (setA.strings.size() > opts.set_cap_A) setA.strings.resize(opts.set_cap_A);
  if (setB.strings.size() > opts.set_cap_B) setB.strings.resize(opts.set_cap_B);
  pop.setA = std::move(setA.strings);
  pop.setB = std::move(setB.strings);
  pop.meta.set_cap_A = opts.set_cap_A;
  pop.meta.set_cap_B = opts.set_cap_B;
  pop.meta.setA_id = set_id("P_klG", lA, opts.set_cap_A, pop.meta.setA_truncated);
  pop.meta.setB_id = set_id("P_klG", lB, opts.set_cap_B, pop.meta.setB_truncated);

  std::vector<MatrixXcd> term_dense(pop.m);
  for (int a = 0; a < pop.m; ++a) term_dense[a] = to_dense(h_true.terms[a]);
  std::vector<MatrixXcd> a_dense(pop.setA.size()), b_dense(pop.setB.size());
  for (std::size_t i = 0; i < pop.setA.size(); ++i) a_dense[i] = to_dense(pop.setA[i]);
  for (std::size_t i = 0; i < pop.setB.size(); ++i) b_dense[i] = to_dense(pop.setB[i]);

  // (i) commutation family, degree-2 symbolic polynomials.
  for (std::size_t i = 0; i < pop.setA.size(); ++i) {
    for (std::size_t j = 0; j < pop.setA.size(); ++j) {
      Constraint c;
      c.kind = Constraint::Kind::Commutation;
      c.rhs = pop.meta.eps0 * pop.meta.eps0;
      c.lin.resize(pop.m);
      MatrixXcd prefix = a_dense[i] * a_dense[j];
      for (int a = 0; a < pop.m; ++a) {
        MatrixXcd comm = term_dense[a] * pop.rho.rho - pop.rho.rho * term_dense[a];
        // Tr~(A1 A2 (E_a rho - rho E_a)); the estimator sees M with rho folded
        // in already, so exact mode is a plain trace of prefix * comm.
        std::complex<double> tr = (prefix * comm).trace();
        if (pop.est.mode == TraceEstimator::Mode::ShotNoise) {
          DensityMatrix unit;  // carry the full product; noise applies to the value
          unit.rho = MatrixXcd::Identity(prefix.rows(), prefix.cols());
          tr = pop.est.estimate(prefix * comm, unit, pair_tag(1, i, j) ^ (a + 1));
        }
        c.lin[a] = tr;
      }
      c.poly = square_linear_form(c.lin);
      c.symbolic = true;
      pop.constraints.push_back(std::move(c));
    }
  }

  // (ii) flat-exponential family.
  bool expandable = flat.params.degree_bound <= opts.sym_degree_cap;
  pop.meta.residual_only = !expandable;
  MonoPoly q_mono;
  if (expandable) q_mono = expand_flat(flat).mono;
  for (std::size_t i = 0; i < pop.setB.size(); ++i) {
    for (std::size_t j = 0; j < pop.setB.size(); ++j) {
      Constraint c;
      c.kind = Constraint::Kind::FlatExp;
      c.rhs = eps * eps;
      c.b1 = static_cast<int>(i);
      c.b2 = static_cast<int>(j);
      c.pair_trace = pop.est.estimate(b_dense[i] * b_dense[j], pop.rho, pair_tag(2, i, j));
      if (expandable) {
        c.poly = expand_flat_constraint(pop, q_mono, b_dense[i], b_dense[j],
                                        c.pair_trace, term_dense, pair_tag(3, i, j));
        c.symbolic = true;
      }
      pop.constraints.push_back(std::move(c));
    }
  }
  return pop;
}

namespace {

struct DenseCache {
  std::vector<MatrixXcd> terms;
  std::vector<MatrixXcd> setB;
};

DenseCache make_cache(const PopInstance& pop) {
  DenseCache cache;
  cache.terms.resize(pop.m);
  for (int a = 0; a < pop.m; ++a) cache.terms[a] = to_dense(pop.ham.terms[a]);
  cache.setB.resize(pop.setB.size());
  for (std::size_t i = 0; i < pop.setB.size(); ++i) cache.setB[i] = to_dense(pop.setB[i]);
  return cache;
}

double constraint_lhs(const PopInstance& pop, const Constraint& c,
                      const std::vector<double>& lam,
                      const std::map<int, MatrixXcd>& flat_by_b1,
                      const DenseCache& cache, std::size_t cidx) {
  switch (c.kind) {
    case Constraint::Kind::Commutation: {
      std::complex<double> v{0.0, 0.0};
      for (int a = 0; a < pop.m; ++a) v += lam[a] * c.lin[a];
      return std::norm(v);
    }
    case Constraint::Kind::FlatExp: {
      // flat_by_b1 holds W rho, so Tr(B2 W rho) is a single elementwise pass.
      const MatrixXcd& w_rho = flat_by_b1.at(c.b1);
      std::complex<double> tr =
          pop.est.perturb(trace_product(cache.setB[c.b2], w_rho), (0xE7ULL << 48) ^ cidx);
      return std::norm(tr - c.pair_trace);
    }
    default: {
      double s = 0.0;
      for (double x : lam) s += x * x;
      return s;
    }
  }
}

std::map<int, MatrixXcd> flat_words(const PopInstance& pop, const std::vector<double>& lam,
                                    const DenseCache& cache, bool parallel = false) {
  MatrixXcd hd = MatrixXcd::Zero(pop.rho.rho.rows(), pop.rho.rho.cols());
  for (int a = 0; a < pop.m; ++a) hd += lam[a] * cache.terms[a];
  MatrixXcd x = -pop.meta.beta * hd;
  std::map<int, MatrixXcd> by_b1;
  for (const Constraint& c : pop.constraints)
    if (c.kind == Constraint::Kind::FlatExp) by_b1.emplace(c.b1, MatrixXcd());
  std::vector<std::map<int, MatrixXcd>::iterator> slots;
  slots.reserve(by_b1.size());
  for (auto it = by_b1.begin(); it != by_b1.end(); ++it) slots.push_back(it);
  if (parallel) {
    // Distinct map nodes; no structural changes, so concurrent writes are safe.
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads())
    for (std::size_t i = 0; i < slots.size(); ++i)
      slots[i]->second = apply_flat_comm(pop.flat, x, cache.setB[slots[i]->first]) *
                         pop.rho.rho;
  } else {
    for (auto& it : slots)
      it->second = apply_flat_comm(pop.flat, x, cache.setB[it->first]) * pop.rho.rho;
  }
  return by_b1;
}

std::vector<double> residuals_impl(const PopInstance& pop, const std::vector<double>& lam,
                                   bool parallel) {
  if (lam.size() != static_cast<std::size_t>(pop.m))
    throw std::invalid_argument("residuals: coupling count mismatch");
  for (double x : lam)
    if (!(std::abs(x) <= 1.0 + 1e-12))
      throw std::invalid_argument("residuals: couplings must lie in [-1, 1]");
  DenseCache cache = make_cache(pop);
  std::map<int, MatrixXcd> by_b1 = flat_words(pop, lam, cache, parallel);
  std::vector<double> out(pop.constraints.size());
  if (parallel) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::size_t k = 0; k < pop.constraints.size(); ++k)
      out[k] = constraint_lhs(pop, pop.constraints[k], lam, by_b1, cache, k);
  } else {
    for (std::size_t k = 0; k < pop.constraints.size(); ++k)
      out[k] = constraint_lhs(pop, pop.constraints[k], lam, by_b1, cache, k);
  }
  return out;
}

}  // namespace

std::vector<double> residuals(const PopInstance& pop, const std::vector<double>& lam) {
  return residuals_impl(pop, lam, true);
}

std::vector<double> residuals_serial(const PopInstance& pop, const std::vector<double>& lam) {
  return residuals_impl(pop, lam, false);
}

double eval_constraint_poly(const Constraint& c, const std::vector<double>& lam) {
  if (!c.symbolic) throw std::domain_error("eval_constraint_poly: constraint not symbolic");
  double acc = 0.0;
  for (const SparseTerm& t : c.poly) {
    double v = t.coef;
    for (std::size_t a = 0; a < lam.size(); ++a)
      for (int e = 0; e < t.exps[a]; ++e) v *= lam[a];
    acc += v;
  }
  return acc;
}

double max_violation(const PopInstance& pop, const std::vector<double>& lam) {
  std::vector<double> r = residuals_serial(pop, lam);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < r.size(); ++k)
    worst = std::max(worst, r[k] - pop.constraints[k].rhs);
  return worst;
}

namespace {

// Shared read-only evaluation state for the optimizer; building the dense
// caches once per learn call instead of once per objective evaluation.
struct Evaluator {
  const PopInstance& pop;
  DenseCache cache;

  explicit Evaluator(const PopInstance& p) : pop(p), cache(make_cache(p)) {}

  // max violation and the sum of positive violations in one sweep.
  void violations_at(const std::vector<double>& lam, double* worst, double* total) const {
    std::map<int, MatrixXcd> by_b1 = flat_words(pop, lam, cache);
    *worst = -std::numeric_limits<double>::infinity();
    *total = 0.0;
    for (std::size_t k = 0; k < pop.constraints.size(); ++k) {
      double v = constraint_lhs(pop, pop.constraints[k], lam, by_b1, cache, k) -
                 pop.constraints[k].rhs;
      *worst = std::max(*worst, v);
      *total += std::max(0.0, v);
    }
  }

  double max_violation_at(const std::vector<double>& lam) const {
    double worst, total;
    violations_at(lam, &worst, &total);
    return worst;
  }
};

struct StartOutcome {
  std::vector<double> lam;
  LearnStartReport report;
};

// Projected compass search. The max violation is a max over many narrow
// quadratic walls and stalls coordinate descent easily, so the search first
// descends the smooth surrogate sum of positive violations (zero exactly on
// the feasible set) and then polishes the max violation itself.
StartOutcome run_start(const Evaluator& ev, int start_index, std::uint64_t seed,
                       int max_iters) {
  const PopInstance& pop = ev.pop;
  int m = pop.m;
  std::vector<double> x(m, 0.0);
  if (start_index > 0) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(start_index) * 0x9e3779b9ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : x) v = u(rng);
  }
  auto clamp = [&](double v) { return std::min(pop.box_hi, std::max(pop.box_lo, v)); };

  StartOutcome out;
  out.report.start_index = start_index;
  int iter = 0;
  double worst_x, total_x;
  ev.violations_at(x, &worst_x, &total_x);
  for (int phase = 0; phase < 2; ++phase) {
    bool surrogate = phase == 0;
    double f = surrogate ? total_x : worst_x;
    double step = surrogate ? 0.5 : 0.125;
    while (iter < max_iters && step > 1e-9) {
      bool improved = false;
      for (int a = 0; a < m && !improved; ++a) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[a] = clamp(y[a] + dir * step);
          if (y[a] == x[a]) continue;
          double worst_y, total_y;
          ev.violations_at(y, &worst_y, &total_y);
          double fy = surrogate ? total_y : worst_y;
          if (fy < f - 1e-18) {
            x = std::move(y);
            f = fy;
            worst_x = worst_y;
            total_x = total_y;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
      out.report.trajectory.push_back(worst_x);
      ++iter;
      if (surrogate && total_x == 0.0) break;  // feasible; switch to the max
    }
  }
  out.report.iterations = iter;
  out.report.objective = worst_x;
  out.lam = std::move(x);
  return out;
}

}  // namespace

std::pair<std::vector<double>, LearnReport> learn(const PopInstance& pop,
                                                  const LearnOptions& opts) {
  if (opts.starts < 1) throw std::invalid_argument("learn: need at least one start");
  auto t0 = std::chrono::steady_clock::now();
  Evaluator ev(pop);
  std::vector<StartOutcome> outcomes(opts.starts);
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads())
  for (int s = 0; s < opts.starts; ++s)
    outcomes[s] = run_start(ev, s, opts.seed, opts.max_iters);

  int best = 0;
  for (int s = 1; s < opts.starts; ++s)
    if (outcomes[s].report.objective < outcomes[best].report.objective) best = s;

  LearnReport report;
  report.objective = outcomes[best].report.objective;
  report.feasible = report.objective <= 0.0;
  report.best_start = best;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (auto& o : outcomes) report.starts.push_back(std::move(o.report));
  return {outcomes[best].lam, std::move(report)};
}

double auto_ball_radius(const PopInstance& pop) { return std::sqrt(static_cast<double>(pop.m)); }

PopInstance add_ball_constraint(PopInstance pop, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("add_ball_constraint: R must be positive");
  Constraint c;
  c.kind = Constraint::Kind::Ball;
  c.rhs = R * R;
  c.symbolic = true;
  for (int a = 0; a < pop.m; ++a) {
    SparseTerm t;
    t.exps.assign(pop.m, 0);
    t.exps[a] = 2;
    t.coef = 1.0;
    c.poly.push_back(std::move(t));
  }
  pop.constraints.push_back(std::move(c));
  pop.ball_radius = R;
  double rsq = R * R;
  pop.ball_radius_exact = rsq == static_cast<double>(pop.m);
  // R below sqrt(m) cuts the box; the truth may become infeasible.
  pop.meta.ball_cuts_box = rsq < static_cast<double>(pop.m);
  return pop;
}

// --------------------------------------------------------------------------
// JSON export / import.

namespace {

nlohmann::json complex_to_json(const std::complex<double>& z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

}  // namespace

nlohmann::json export_pop(const PopInstance& pop) {
  if (pop.meta.residual_only)
    throw std::domain_error(
        "export_pop: instance is residual-only (flat-exp constraints were not "
        "expanded symbolically)");
  nlohmann::json j;
  j["schema"] = "flatcheb.pop_instance/1";
  j["m"] = pop.m;
  j["n"] = pop.ham.n;
  j["locality"] = pop.ham.locality;
  j["beta"] = pop.meta.beta;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : pop.ham.terms) terms.push_back(t.str());
  j["terms"] = terms;
  j["truth"] = pop.ham.couplings;
  j["flat"] = flat_params_to_json(pop.flat.params);
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : pop.flat.factors)
    factors.push_back({{"scale", f.scale}, {"coeffs", f.coeffs}});
  j["flat_factors"] = factors;
  j["trace"] = {{"mode", pop.meta.trace_mode},
                {"samples", pop.meta.trace_samples},
                {"seed", pop.meta.trace_seed}};
  nlohmann::json setA = nlohmann::json::array(), setB = nlohmann::json::array();
  for (const auto& p : pop.setA) setA.push_back(p.str());
  for (const auto& p : pop.setB) setB.push_back(p.str());
  j["setA"] = setA;
  j["setB"] = setB;
  j["box"] = {pop.box_lo, pop.box_hi};
  if (pop.ball_radius) {
    j["ball"] = {{"radius", *pop.ball_radius}};
    if (pop.ball_radius_exact)
      j["ball"]["radius_squared_rational"] = std::to_string(pop.m) + "/1";
  }
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : pop.constraints) {
    nlohmann::json cj;
    cj["kind"] = to_string(c.kind);
    cj["rhs"] = c.rhs;
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& t : c.poly) poly.push_back({{"exps", t.exps}, {"coef", t.coef}});
    cj["poly"] = poly;
    if (c.kind == Constraint::Kind::Commutation) {
      nlohmann::json lin = nlohmann::json::array();
      for (const auto& z : c.lin) lin.push_back(complex_to_json(z));
      cj["lin"] = lin;
    } else if (c.kind == Constraint::Kind::FlatExp) {
      cj["b1"] = c.b1;
      cj["b2"] = c.b2;
      cj["pair_trace"] = complex_to_json(c.pair_trace);
    }
    cons.push_back(std::move(cj));
  }
  j["constraints"] = cons;
  j["metadata"] = {
      {"eps", pop.meta.eps},
      {"eps0", pop.meta.eps0},
      {"eps0_flushed", pop.meta.eps0_flushed},
      {"eps0_overridden", pop.meta.eps0_overridden},
      {"CkG", pop.meta.CkG},
      {"setA_id", pop.meta.setA_id},
      {"setB_id", pop.meta.setB_id},
      {"setA_truncated", pop.meta.setA_truncated},
      {"setB_truncated", pop.meta.setB_truncated},
      {"set_cap_A", pop.meta.set_cap_A},
      {"set_cap_B", pop.meta.set_cap_B},
      {"flat_requirement_met", pop.meta.flat_requirement_met},
      {"flat_requirement_overridden", pop.meta.flat_requirement_overridden},
      {"sym_degree_cap", pop.meta.sym_degree_cap},
      {"residual_only", pop.meta.residual_only},
  };
  return j;
}

PopInstance import_pop(const nlohmann::json& j) {
  if (j.at("schema") != "flatcheb.pop_instance/1")
    throw std::invalid_argument("import_pop: unknown schema");
  PopInstance pop;
  pop.m = j.at("m").get<int>();
  int n = j.at("n").get<int>();
  int locality = j.at("locality").get<int>();
  std::vector<PauliString> terms;
  for (const auto& s : j.at("terms")) terms.push_back(PauliString::parse(s.get<std::string>()));
  std::vector<double> truth = j.at("truth").get<std::vector<double>>();
  pop.ham = LocalHamiltonian(n, locality, std::move(terms), std::move(truth));
  pop.meta.beta = j.at("beta").get<double>();

  const auto& fp = j.at("flat");
  pop.flat.params.eps = fp.at("eps").get<double>();
  pop.flat.params.eta = fp.at("eta").get<double>();
  pop.flat.params.t = fp.at("t").get<double>();
  pop.flat.params.k = fp.at("k").get<int>();
  pop.flat.params.l = fp.at("l").get<long>();
  pop.flat.params.degree_bound = fp.at("degree_bound").get<long>();
  for (const auto& f : j.at("flat_factors"))
    pop.flat.factors.emplace_back(f.at("scale").get<double>(),
                                  f.at("coeffs").get<std::vector<double>>());

  const auto& tj = j.at("trace");
  if (tj.at("mode").get<std::string>() == "exact") {
    pop.est = TraceEstimator::exact();
  } else {
    pop.est = TraceEstimator::shot_noise(tj.at("samples").get<long>(),
                                         tj.at("seed").get<std::uint64_t>());
  }
  pop.meta.trace_mode = pop.est.mode_name();
  pop.meta.trace_samples = pop.est.samples;
  pop.meta.trace_seed = pop.est.seed;

  for (const auto& s : j.at("setA")) pop.setA.push_back(PauliString::parse(s.get<std::string>()));
  for (const auto& s : j.at("setB")) pop.setB.push_back(PauliString::parse(s.get<std::string>()));
  pop.box_lo = j.at("box")[0].get<double>();
  pop.box_hi = j.at("box")[1].get<double>();
  if (j.contains("ball")) {
    pop.ball_radius = j.at("ball").at("radius").get<double>();
    pop.ball_radius_exact = j.at("ball").contains("radius_squared_rational");
  }
  for (const auto& cj : j.at("constraints")) {
    Constraint c;
    std::string kind = cj.at("kind").get<std::string>();
    c.kind = kind == "commutation" ? Constraint::Kind::Commutation
             : kind == "flat-exp"  ? Constraint::Kind::FlatExp
                                   : Constraint::Kind::Ball;
    c.rhs = cj.at("rhs").get<double>();
    for (const auto& t : cj.at("poly"))
      c.poly.push_back(SparseTerm{t.at("exps").get<std::vector<int>>(),
                                  t.at("coef").get<double>()});
    c.symbolic = true;
    if (c.kind == Constraint::Kind::Commutation) {
      for (const auto& z : cj.at("lin")) c.lin.push_back(complex_from_json(z));
    } else if (c.kind == Constraint::Kind::FlatExp) {
      c.b1 = cj.at("b1").get<int>();
      c.b2 = cj.at("b2").get<int>();
      c.pair_trace = complex_from_json(cj.at("pair_trace"));
    }
    pop.constraints.push_back(std::move(c));
  }
  const auto& mj = j.at("metadata");
  pop.meta.eps = mj.at("eps").get<double>();
  pop.meta.eps0 = mj.at("eps0").get<double>();
  pop.meta.eps0_flushed = mj.at("eps0_flushed").get<bool>();
  pop.meta.eps0_overridden = mj.at("eps0_overridden").get<bool>();
  pop.meta.CkG = mj.at("CkG").get<double>();
  pop.meta.setA_id = mj.at("setA_id").get<std::string>();
  pop.meta.setB_id = mj.at("setB_id").get<std::string>();
  pop.meta.setA_truncated = mj.at("setA_truncated").get<bool>();
  pop.meta.setB_truncated = mj.at("setB_truncated").get<bool>();
  pop.meta.set_cap_A = mj.at("set_cap_A").get<std::size_t>();
  pop.meta.set_cap_B = mj.at("set_cap_B").get<std::size_t>();
  pop.meta.flat_requirement_met = mj.at("flat_requirement_met").get<bool>();
  pop.meta.flat_requirement_overridden = mj.at("flat_requirement_overridden").get<bool>();
  pop.meta.sym_degree_cap = mj.at("sym_degree_cap").get<long>();
  pop.meta.residual_only = mj.at("residual_only").get<bool>();

  // The measured state is regenerated from the embedded generator data; the
  // eigendecomposition is deterministic, so residuals reproduce bit-for-bit.
  pop.rho = gibbs_state(pop.ham, pop.meta.beta);
  return pop;
}

void export_pop_file(const PopInstance& pop, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_pop_file: cannot open " + path);
  out << export_pop(pop).dump(2) << "\n";
}

PopInstance import_pop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_pop_file: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return import_pop(j);
}

}  // namespace flatcheb
