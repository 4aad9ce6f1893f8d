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

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "flatcheb/certify.hpp"
#include "flatcheb/flatexp.hpp"
#include "flatcheb/parallel.hpp"
#include "flatcheb/pop.hpp"
#include "flatcheb/presets.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace flatcheb;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 validation, 3 certification failure,
// 4 acceptance-threshold miss.
constexpr int kExitValidation = 2;
constexpr int kExitCertification = 3;
constexpr int kExitThresholdMiss = 4;

json tool_stamp(const json& config) {
  return {{"name", "flatcheb"}, {"version", kVersion}, {"config", config}};
}

void write_json(const fs::path& path, const json& j) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << "\n";
}

struct ApproxArgs {
  double eps = 0.1, eta = 0.5, t = 1.0;
  int grid_points = 10001, tail_points = 256;
  double extent = 50.0;
  std::string out = "out/approx";
  bool certify_orders = false;
  int max_bits = 4096;
};

int cmd_approx_build(const ApproxArgs& a) {
  FlatParams params = choose_flat_params(a.eps, a.eta, a.t);
  FlatApprox q = build_flat(params);
  if (a.certify_orders) {
    bool all = true;
    for (long order : truncation_orders(params))
      all = all && certify_sign(static_cast<int>(order), a.max_bits).status ==
                       CertStatus::Certified;
    q.orders_certified = all;
  }
  GridSpec grid{a.grid_points, a.extent, a.tail_points};
  FlatReport report = verify_flat_property(q, grid);

  json config = {{"eps", a.eps},         {"eta", a.eta},
                 {"t", a.t},             {"grid_points", a.grid_points},
                 {"extent", a.extent},   {"tail_points", a.tail_points},
                 {"certify_orders", a.certify_orders}};
  json desc = {{"schema", "flatcheb.flat_approx/1"},
               {"tool", tool_stamp(config)},
               {"params", flat_params_to_json(params)},
               {"orders_certified", q.orders_certified}};
  json factors = json::array();
  for (const auto& f : q.factors)
    factors.push_back({{"scale", f.scale}, {"coeffs", f.coeffs}});
  desc["factors"] = factors;
  write_json(fs::path(a.out) / "flat_approx.json", desc);

  json rep = flat_report_to_json(report);
  rep["tool"] = tool_stamp(config);
  write_json(fs::path(a.out) / "flat_report.json", rep);

  std::cout << "flat approximation: k=" << params.k << " l=" << params.l
            << " degree=" << params.degree_bound << "\n"
            << "max |Q - e^x| on [-t,t]: " << report.max_abs_err
            << (report.accuracy_pass ? " (<= eps)" : " (EXCEEDS eps)") << "\n"
            << "max tail ratio: " << report.max_flat_ratio
            << (report.flatness_pass ? " (<= 1)" : " (EXCEEDS 1)") << "\n"
            << "report: " << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : kExitThresholdMiss;
}

int cmd_approx_compare_taylor(double eps, const std::vector<double>& ts,
                              const std::string& out) {
  json rows = json::array();
  std::cout << "t        chebyshev  taylor\n";
  for (double t : ts) {
    int nc = choose_truncation_order(t, eps);
    int nt = taylor_truncation_order(t, eps);
    std::cout << t << "\t " << nc << "\t    " << nt << "\n";
    rows.push_back({{"t", t}, {"chebyshev", nc}, {"taylor", nt}});
  }
  if (!out.empty()) {
    json j = {{"schema", "flatcheb.order_comparison/1"},
              {"tool", tool_stamp({{"eps", eps}, {"t", ts}})},
              {"eps", eps},
              {"rows", rows}};
    write_json(out, j);
  }
  return 0;
}

int cmd_certify(int from, int to, int max_bits, bool serial, const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Certificate> certs = certify_range(from, to, max_bits, !serial);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json config = {{"from", from}, {"to", to}, {"max_bits", max_bits}, {"serial", serial}};
  int bad = 0;
  for (const Certificate& c : certs) {
    json j = certificate_to_json(c);
    j["tool"] = tool_stamp(config);
    if (!out.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "N%04d.json", c.N);
      write_json(fs::path(out) / name, j);
    }
    if (c.status != CertStatus::Certified) {
      ++bad;
      std::cout << "N=" << c.N << ": " << to_string(c.status) << "\n";
    }
  }
  std::cout << "certified " << (certs.size() - bad) << "/" << certs.size() << " in " << dt
            << " s";
  if (!out.empty()) std::cout << "; certificates in " << out;
  std::cout << "\n";
  if (from == to) {
    const Certificate& c = certs.front();
    std::cout << "N=" << c.N << ": parity " << (c.even ? "even" : "odd") << ", claim "
              << to_string(c.claim) << ", " << to_string(c.status) << " at " << c.bits
              << " bits\n";
  }
  return bad == 0 ? 0 : kExitCertification;
}

struct HamArgs {
  std::string instance;
  std::string preset = "zz-chain-4";
  double beta = 0.5;
  double eps = 0.01;
  double ckg = 1.0;
  std::uint64_t seed = 7;
  long shots = 0;  // 0 = exact traces
  std::size_t set_cap_a = 6, set_cap_b = 32;
  std::string out;
};

TraceEstimator make_estimator(const HamArgs& a) {
  if (a.shots > 0) return TraceEstimator::shot_noise(a.shots, a.seed);
  return TraceEstimator::exact();
}

json ham_config(const HamArgs& a) {
  return {{"instance", a.instance}, {"preset", a.preset},   {"beta", a.beta},
          {"eps", a.eps},           {"ckg", a.ckg},         {"seed", a.seed},
          {"shots", a.shots},       {"set_cap_a", a.set_cap_a},
          {"set_cap_b", a.set_cap_b}};
}

PopInstance load_or_build(const HamArgs& a, bool exportable) {
  if (!a.instance.empty()) return import_pop_file(a.instance);
  LocalHamiltonian h = make_preset(a.preset, a.seed);
  AssembleOptions opts;
  opts.set_cap_A = a.set_cap_a;
  opts.set_cap_B = a.set_cap_b;
  FlatApprox flat;
  if (exportable) {
    // Symbolic instances need a low-degree product; recorded as an override.
    FlatParams p;
    p.eps = 0.2;
    p.eta = 0.9;
    p.t = 3.0;
    p.k = 1;
    p.l = 2;
    p.degree_bound = 4;
    flat = build_flat(p);
    opts.override_flat_requirement = true;
  } else {
    flat = preset_flat(h, a.beta, a.eps, a.ckg);
  }
  return assemble_pop(h, a.beta, a.eps, a.ckg, make_estimator(a), flat, opts);
}

int cmd_ham_generate(const HamArgs& a) {
  PopInstance pop = load_or_build(a, /*exportable=*/true);
  json j = export_pop(pop);
  j["tool"] = tool_stamp(ham_config(a));
  std::string out = a.out.empty() ? "out/instance.json" : a.out;
  write_json(out, j);
  std::cout << "instance with " << pop.constraints.size() << " constraints (|A|="
            << pop.setA.size() << ", |B|=" << pop.setB.size() << ") -> " << out << "\n";
  return 0;
}

int cmd_ham_residuals(const HamArgs& a, bool at_truth, const std::string& at_csv) {
  PopInstance pop = load_or_build(a, /*exportable=*/false);
  std::vector<double> lam;
  if (at_truth || at_csv.empty()) {
    lam = pop.ham.couplings;
  } else {
    std::stringstream ss(at_csv);
    std::string item;
    while (std::getline(ss, item, ',')) lam.push_back(std::stod(item));
    if (lam.size() != static_cast<std::size_t>(pop.m))
      throw CLI::ValidationError("--at needs exactly m couplings");
  }
  std::vector<double> r = residuals(pop, lam);
  bool all_pass = true;
  double worst = -1e308;
  for (std::size_t k = 0; k < r.size(); ++k) {
    double v = r[k] - pop.constraints[k].rhs;
    worst = std::max(worst, v);
    all_pass = all_pass && v <= 0.0;
  }
  json j = {{"schema", "flatcheb.residual_report/1"},
            {"tool", tool_stamp(ham_config(a))},
            {"at", lam},
            {"at_truth", at_truth || at_csv.empty()},
            {"residuals", r},
            {"max_violation", worst},
            {"all_pass", all_pass},
            {"trace_mode", pop.meta.trace_mode}};
  if (!a.out.empty()) write_json(a.out, j);
  std::cout << "residuals: " << r.size() << " constraints, max violation " << worst
            << (all_pass ? " (all within bounds)" : " (VIOLATED)") << "\n";
  return 0;
}

int cmd_ham_learn(const HamArgs& a, int starts, int max_iters, double tolerance,
                  const std::string& out) {
  PopInstance pop = load_or_build(a, /*exportable=*/false);
  LearnOptions opts;
  opts.starts = starts;
  opts.max_iters = max_iters;
  opts.seed = a.seed;
  auto [lam, report] = learn(pop, opts);
  double max_err = 0.0;
  for (int i = 0; i < pop.m; ++i)
    max_err = std::max(max_err, std::abs(lam[i] - pop.ham.couplings[i]));
  json starts_json = json::array();
  for (const auto& s : report.starts)
    starts_json.push_back({{"start", s.start_index},
                           {"objective", s.objective},
                           {"iterations", s.iterations},
                           {"trajectory", s.trajectory}});
  json j = {{"schema", "flatcheb.learn_report/1"},
            {"tool", tool_stamp(ham_config(a))},
            {"lam_hat", lam},
            {"truth", pop.ham.couplings},
            {"max_coupling_error", max_err},
            {"objective", report.objective},
            {"feasible", report.feasible},
            {"best_start", report.best_start},
            {"wall_time_s", report.wall_time_s},
            {"starts", starts_json},
            {"trace_mode", pop.meta.trace_mode}};
  if (!out.empty()) write_json(out, j);
  std::cout << "lam_hat:";
  for (double v : lam) std::cout << " " << v;
  std::cout << "\nmax coupling error: " << max_err << " (objective " << report.objective
            << ", " << report.wall_time_s << " s)\n";
  if (tolerance > 0.0 && max_err > tolerance) {
    std::cout << "threshold " << tolerance << " missed\n";
    return kExitThresholdMiss;
  }
  return 0;
}

int cmd_ham_export(const HamArgs& a, const std::string& ball, const std::string& out) {
  PopInstance pop = load_or_build(a, /*exportable=*/true);
  if (!ball.empty()) {
    double radius = ball == "auto" ? auto_ball_radius(pop) : std::stod(ball);
    pop = add_ball_constraint(std::move(pop), radius);
  }
  json j = export_pop(pop);
  j["tool"] = tool_stamp(ham_config(a));
  std::string path = out.empty() ? "out/instance.json" : out;
  write_json(path, j);
  std::cout << "exported " << pop.constraints.size() << " constraints -> " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat Chebyshev exponential products, exact sign certificates, and "
               "desk-scale Hamiltonian learning from Gibbs states"};
  app.set_config("--config");
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = all)");

  // approx
  auto* approx = app.add_subcommand("approx", "flat approximation construction");
  ApproxArgs aa;
  auto* build = approx->add_subcommand("build", "build Q_{k,l} and verify it");
  build->add_option("--eps", aa.eps, "target accuracy in (0,1)")->required();
  build->add_option("--eta", aa.eta, "flatness slack in (0,1)")->required();
  build->add_option("--t", aa.t, "accuracy half-width")->required();
  build->add_option("--grid-points", aa.grid_points);
  build->add_option("--extent", aa.extent);
  build->add_option("--tail-points", aa.tail_points);
  build->add_option("--out", aa.out);
  build->add_flag("--certify-orders", aa.certify_orders,
                  "run the sign certificates for the truncation orders");
  double cte = 1e-6;
  std::vector<double> cts{1.0, 2.0, 5.0};
  std::string cto;
  auto* cmp = approx->add_subcommand("compare-taylor", "order comparison table");
  cmp->add_option("--eps", cte)->required();
  cmp->add_option("--t", cts, "one or more half-widths");
  cmp->add_option("--out", cto);

  // certify
  auto* cert = app.add_subcommand("certify", "sign certificates for G_N");
  int cfrom = 2, cto_n = 50, cbits = 4096;
  bool cserial = false;
  std::string cout_dir;
  cert->add_option("--from", cfrom)->required();
  cert->add_option("--to", cto_n)->required();
  cert->add_option("--max-bits", cbits);
  cert->add_flag("--serial", cserial, "disable the parallel driver");
  cert->add_option("--out", cout_dir, "directory for per-N certificates");

  // ham
  auto* ham = app.add_subcommand("ham", "Hamiltonian-learning instances");
  HamArgs ha;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", ha.instance, "import an instance file");
    sub->add_option("--preset", ha.preset, "single-qubit | zz-chain-4 | tfim-4");
    sub->add_option("--beta", ha.beta);
    sub->add_option("--eps", ha.eps);
    sub->add_option("--ckg", ha.ckg, "interaction-graph constant C(k,G)");
    sub->add_option("--seed", ha.seed);
    sub->add_option("--shots", ha.shots, "trace samples (0 = exact)");
    sub->add_option("--set-cap-a", ha.set_cap_a);
    sub->add_option("--set-cap-b", ha.set_cap_b);
  };
  auto* gen = ham->add_subcommand("generate", "assemble and write an instance");
  add_common(gen);
  gen->add_option("--out", ha.out);
  auto* res = ham->add_subcommand("residuals", "evaluate constraint residuals");
  add_common(res);
  bool at_truth = false;
  std::string at_csv;
  res->add_flag("--at-truth", at_truth);
  res->add_option("--at", at_csv, "comma-separated couplings");
  res->add_option("--out", ha.out);
  auto* lrn = ham->add_subcommand("learn", "recover couplings");
  add_common(lrn);
  int starts = 6, max_iters = 400;
  double tolerance = 0.0;
  std::string learn_out;
  lrn->add_option("--starts", starts);
  lrn->add_option("--max-iters", max_iters);
  lrn->add_option("--tolerance", tolerance, "exit 4 if max coupling error exceeds this");
  lrn->add_option("--out", learn_out);
  auto* exp = ham->add_subcommand("export", "write an instance file");
  add_common(exp);
  std::string ball, export_out;
  exp->add_option("--ball-radius", ball, "'auto' (= sqrt(m)) or a number");
  exp->add_option("--out", export_out);

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  set_max_threads(threads);
  try {
    if (build->parsed()) return cmd_approx_build(aa);
    if (cmp->parsed()) return cmd_approx_compare_taylor(cte, cts, cto);
    if (cert->parsed()) return cmd_certify(cfrom, cto_n, cbits, cserial, cout_dir);
    if (gen->parsed()) return cmd_ham_generate(ha);
    if (res->parsed()) return cmd_ham_residuals(ha, at_truth, at_csv);
    if (lrn->parsed()) return cmd_ham_learn(ha, starts, max_iters, tolerance, learn_out);
    if (exp->parsed()) return cmd_ham_export(ha, ball, export_out);
    std::cerr << "no subcommand\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
