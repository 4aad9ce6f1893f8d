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

#include <doctest.h>

#include <cmath>
#include <random>

#include "flatcheb/presets.hpp"

using namespace flatcheb;

namespace {

PopInstance small_symbolic_instance() {
  // Degree-4 flat product: expandable symbolically.
  LocalHamiltonian h = make_preset("zz-chain-4", 7);
  FlatParams p;
  p.eps = 0.2;
  p.eta = 0.9;
  p.t = 3.0;
  p.k = 1;
  p.l = 2;
  p.degree_bound = 4;
  FlatApprox flat = build_flat(p);
  AssembleOptions opts;
  opts.set_cap_A = 4;
  opts.set_cap_B = 6;
  opts.override_flat_requirement = true;
  return assemble_pop(h, 0.5, 0.05, 1.0, TraceEstimator::exact(), flat, opts);
}

}  // namespace

TEST_SUITE_BEGIN("pop");

TEST_CASE("commuting instance has identically zero commutation polynomials") {
  LocalHamiltonian h = make_preset("single-qubit", 0);
  FlatApprox flat = preset_flat(h, 1.0, 0.05, 1.0);
  PopInstance pop = assemble_pop(h, 1.0, 0.05, 1.0, TraceEstimator::exact(), flat);
  int commutation = 0;
  for (const auto& c : pop.constraints) {
    if (c.kind != Constraint::Kind::Commutation) continue;
    ++commutation;
    for (const auto& z : c.lin) CHECK(std::abs(z) <= 1e-13);
    double poly_norm = 0.0;
    for (const auto& t : c.poly) poly_norm += std::abs(t.coef);
    CHECK(poly_norm <= 1e-26);
  }
  CHECK(commutation == static_cast<int>(pop.setA.size() * pop.setA.size()));
}

TEST_CASE("constraint count is |A|^2 + |B|^2") {
  PopInstance pop = small_symbolic_instance();
  CHECK(pop.constraints.size() == pop.setA.size() * pop.setA.size() +
                                      pop.setB.size() * pop.setB.size());
}

TEST_CASE("assemble validates inputs and the flat requirement") {
  LocalHamiltonian h = make_preset("single-qubit", 0);
  FlatApprox flat = preset_flat(h, 1.0, 0.05, 1.0);
  CHECK_THROWS_AS(assemble_pop(h, -1.0, 0.05, 1.0, TraceEstimator::exact(), flat),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_pop(h, 1.0, 2.0, 1.0, TraceEstimator::exact(), flat),
                  std::invalid_argument);
  // A flat approximation that misses the derived requirement is rejected
  // unless the caller overrides; the override is recorded.
  FlatApprox loose = build_flat(choose_flat_params(0.5, 0.9, 1.0));
  CHECK_THROWS_AS(assemble_pop(h, 1.0, 0.05, 1.0, TraceEstimator::exact(), loose),
                  std::invalid_argument);
  AssembleOptions opts;
  opts.override_flat_requirement = true;
  PopInstance pop = assemble_pop(h, 1.0, 0.05, 1.0, TraceEstimator::exact(), loose, opts);
  CHECK_FALSE(pop.meta.flat_requirement_met);
  CHECK(pop.meta.flat_requirement_overridden);
}

TEST_CASE("eps0 follows the formula and flushes on underflow") {
  LocalHamiltonian h = make_preset("zz-chain-4", 7);
  FlatApprox flat = preset_flat(h, 0.5, 0.05, 1.0);
  PopInstance pop = assemble_pop(h, 0.5, 0.05, 1.0, TraceEstimator::exact(), flat);
  double expo = std::pow(10.0, 1.0 * 0.5);
  double want = std::exp(expo * std::log(0.05)) / 64.0;
  CHECK(pop.meta.eps0 == doctest::Approx(want).epsilon(1e-12));
  CHECK_FALSE(pop.meta.eps0_flushed);

  // CkG beta large enough to underflow the double range.
  AssembleOptions opts;
  opts.override_flat_requirement = true;
  PopInstance tiny = assemble_pop(h, 0.5, 0.05, 8.0, TraceEstimator::exact(), flat, opts);
  CHECK(tiny.meta.eps0 == std::numeric_limits<double>::denorm_min());
  CHECK(tiny.meta.eps0_flushed);

  opts.eps0_override = 1e-6;
  PopInstance forced = assemble_pop(h, 0.5, 0.05, 8.0, TraceEstimator::exact(), flat, opts);
  CHECK(forced.meta.eps0 == 1e-6);
  CHECK(forced.meta.eps0_overridden);
}

TEST_CASE("residuals at the truth are feasible in exact mode") {
  PopInstance pop = small_symbolic_instance();
  std::vector<double> r = residuals(pop, pop.ham.couplings);
  REQUIRE(r.size() == pop.constraints.size());
  for (std::size_t k = 0; k < r.size(); ++k) CHECK(r[k] <= pop.constraints[k].rhs);
  CHECK(max_violation(pop, pop.ham.couplings) <= 0.0);
}

TEST_CASE("sign-flipped couplings violate at least one constraint") {
  LocalHamiltonian h = make_preset("tfim-4", 3);
  FlatApprox flat = preset_flat(h, 0.5, 0.02, 1.0);
  AssembleOptions opts;
  opts.set_cap_B = 16;
  PopInstance pop = assemble_pop(h, 0.5, 0.02, 1.0, TraceEstimator::exact(), flat, opts);
  std::vector<double> flipped = h.couplings;
  for (auto& x : flipped) x = -x;
  CHECK(max_violation(pop, flipped) > 0.0);
}

TEST_CASE("zero candidate reduces flat-exp constraints to commutator traces") {
  PopInstance pop = small_symbolic_instance();
  std::vector<double> zero(pop.m, 0.0);
  std::vector<double> r = residuals(pop, zero);
  // Q(0 | B1) = Q(0) B1, so the residual against the pair trace is
  // |Q(0) Tr(B2 B1 rho) - Tr(B1 B2 rho)|^2; Q(0) is within eps of 1.
  double q0 = eval_flat(pop.flat, 0.0);
  for (std::size_t k = 0; k < pop.constraints.size(); ++k) {
    const Constraint& c = pop.constraints[k];
    if (c.kind != Constraint::Kind::FlatExp) continue;
    MatrixXcd b1 = to_dense(pop.setB[c.b1]);
    MatrixXcd b2 = to_dense(pop.setB[c.b2]);
    std::complex<double> want =
        q0 * trace_product(b2 * b1, pop.rho.rho) - trace_product(b1 * b2, pop.rho.rho);
    CHECK(r[k] == doctest::Approx(std::norm(want)).epsilon(1e-9));
  }
}

TEST_CASE("symbolic polynomials match the matrix path at random points") {
  PopInstance pop = small_symbolic_instance();
  REQUIRE_FALSE(pop.meta.residual_only);
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> lam(pop.m);
    for (auto& x : lam) x = u(rng);
    std::vector<double> r = residuals(pop, lam);
    for (std::size_t k = 0; k < pop.constraints.size(); ++k) {
      double sym = eval_constraint_poly(pop.constraints[k], lam);
      CHECK(std::abs(sym - r[k]) <= 1e-9 * std::max(1.0, std::abs(r[k])));
    }
  }
}

TEST_CASE("residuals parallel equals serial bitwise") {
  PopInstance pop = small_symbolic_instance();
  std::vector<double> lam = pop.ham.couplings;
  std::vector<double> a = residuals(pop, lam);
  std::vector<double> b = residuals_serial(pop, lam);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("learn recovers the single-qubit coupling") {
  LocalHamiltonian h = make_preset("single-qubit", 0);
  FlatApprox flat = preset_flat(h, 1.0, 0.01, 1.0);
  PopInstance pop = assemble_pop(h, 1.0, 0.01, 1.0, TraceEstimator::exact(), flat);
  LearnOptions opts;
  opts.starts = 4;
  opts.max_iters = 200;
  opts.seed = 1;
  auto [lam, report] = learn(pop, opts);
  CHECK(report.feasible);
  CHECK(std::abs(lam[0] - 0.7) <= 0.02);
  CHECK(report.starts.size() == 4);
  CHECK(report.objective <= 0.0);
}

TEST_CASE("learn is deterministic given the seed") {
  PopInstance pop = small_symbolic_instance();
  LearnOptions opts;
  opts.starts = 3;
  opts.max_iters = 60;
  opts.seed = 11;
  auto [lam1, rep1] = learn(pop, opts);
  auto [lam2, rep2] = learn(pop, opts);
  CHECK(lam1 == lam2);
  CHECK(rep1.objective == rep2.objective);
  CHECK(rep1.best_start == rep2.best_start);
}

TEST_CASE("ball constraint geometry and redundancy") {
  PopInstance pop = small_symbolic_instance();
  std::size_t before = pop.constraints.size();
  double R = auto_ball_radius(pop);
  CHECK(R == doctest::Approx(2.0));  // sqrt(4)
  PopInstance with_ball = add_ball_constraint(pop, R);
  REQUIRE(with_ball.constraints.size() == before + 1);
  CHECK(with_ball.ball_radius_exact);
  CHECK_FALSE(with_ball.meta.ball_cuts_box);

  // Box corners lie exactly on the ball.
  std::vector<double> corner(with_ball.m, 1.0);
  std::vector<double> r = residuals(with_ball, corner);
  CHECK(r.back() == doctest::Approx(R * R));

  // Residuals of the original constraints are unchanged by the added ball.
  std::vector<double> r0 = residuals(pop, pop.ham.couplings);
  std::vector<double> r1 = residuals(with_ball, pop.ham.couplings);
  for (std::size_t k = 0; k < r0.size(); ++k) CHECK(r0[k] == r1[k]);
  CHECK(r1.back() <= R * R);

  PopInstance cut = add_ball_constraint(small_symbolic_instance(), 0.5);
  CHECK(cut.meta.ball_cuts_box);
}

TEST_CASE("export/import round trip reproduces residuals") {
  PopInstance pop = add_ball_constraint(small_symbolic_instance(),
                                        auto_ball_radius(small_symbolic_instance()));
  nlohmann::json j = export_pop(pop);
  CHECK(j["schema"] == "flatcheb.pop_instance/1");
  PopInstance back = import_pop(j);
  REQUIRE(back.constraints.size() == pop.constraints.size());
  for (std::size_t k = 0; k < pop.constraints.size(); ++k)
    CHECK(back.constraints[k].poly.size() == pop.constraints[k].poly.size());

  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> lam(pop.m);
    for (auto& x : lam) x = u(rng);
    std::vector<double> r0 = residuals(pop, lam);
    std::vector<double> r1 = residuals(back, lam);
    for (std::size_t k = 0; k < r0.size(); ++k) {
      CHECK(std::abs(r1[k] - r0[k]) <= 1e-15 * std::max(1.0, std::abs(r0[k])));
    }
    // Symbolic evaluation round-trips through JSON identically as well.
    for (std::size_t k = 0; k < pop.constraints.size(); ++k)
      CHECK(eval_constraint_poly(back.constraints[k], lam) ==
            eval_constraint_poly(pop.constraints[k], lam));
  }
  // The serialized ball radius squared is exact.
  CHECK(j["ball"]["radius_squared_rational"] == "4/1");
}

TEST_CASE("export requires symbolic constraints") {
  LocalHamiltonian h = make_preset("zz-chain-4", 7);
  FlatApprox flat = preset_flat(h, 0.5, 0.05, 1.0);  // degree 60: residual-only
  PopInstance pop = assemble_pop(h, 0.5, 0.05, 1.0, TraceEstimator::exact(), flat);
  REQUIRE(pop.meta.residual_only);
  CHECK_THROWS_AS(export_pop(pop), std::domain_error);
}

TEST_CASE("empty-constraint instance exports a valid file") {
  PopInstance pop = small_symbolic_instance();
  pop.constraints.clear();
  nlohmann::json j = export_pop(pop);
  CHECK(j["constraints"].is_array());
  CHECK(j["constraints"].empty());
  PopInstance back = import_pop(j);
  CHECK(back.constraints.empty());
}

TEST_SUITE_END();
