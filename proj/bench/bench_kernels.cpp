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

// Timing comparison of the OpenMP kernels against their serial reference
// implementations. The parallel variants only split index ranges and reduce
// with order-independent operations, so outputs are checked for equality
// while timing.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "flatcheb/certify.hpp"
#include "flatcheb/flatexp.hpp"
#include "flatcheb/parallel.hpp"
#include "flatcheb/pop.hpp"
#include "flatcheb/presets.hpp"

using namespace flatcheb;

namespace {

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
  }
  return best;
}

void print_row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-12s %10.3f s %10.3f s %7.2fx   %s\n", name, serial, parallel,
              serial / parallel, agree ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  std::string kernel = "all";
  int repeat = 3;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--kernel") == 0 && i + 1 < argc) kernel = argv[++i];
    if (std::strcmp(argv[i], "--repeat") == 0 && i + 1 < argc) repeat = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      set_max_threads(std::atoi(argv[++i]));
  }
  std::printf("threads: %d\n", effective_threads());
  std::printf("%-12s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

  if (kernel == "grid" || kernel == "all") {
    FlatApprox q = build_flat(choose_flat_params(1e-3, 0.25, 2.0));
    GridSpec g{40001, 50.0, 1024};
    FlatReport rs, rp;
    double ts = best_of(repeat, [&] { rs = verify_flat_property_serial(q, g); });
    double tp = best_of(repeat, [&] { rp = verify_flat_property(q, g); });
    bool agree = rs.max_abs_err == rp.max_abs_err &&
                 rs.max_flat_ratio == rp.max_flat_ratio && rs.pass == rp.pass;
    print_row("grid", ts, tp, agree);
  }
  if (kernel == "residuals" || kernel == "all") {
    LocalHamiltonian h = make_preset("zz-chain-4", 7);
    FlatApprox flat = preset_flat(h, 0.5, 0.01, 1.0);
    PopInstance pop = assemble_pop(h, 0.5, 0.01, 1.0, TraceEstimator::exact(), flat);
    std::vector<double> rs, rp;
    double ts = best_of(repeat, [&] {
      for (int i = 0; i < 16; ++i) rs = residuals_serial(pop, h.couplings);
    });
    double tp = best_of(repeat, [&] {
      for (int i = 0; i < 16; ++i) rp = residuals(pop, h.couplings);
    });
    print_row("residuals", ts, tp, rs == rp);
  }
  if (kernel == "certify" || kernel == "all") {
    std::vector<Certificate> cs, cp;
    double ts = best_of(1, [&] { cs = certify_range_serial(2, 64); });
    double tp = best_of(1, [&] { cp = certify_range(2, 64); });
    bool agree = cs.size() == cp.size();
    for (std::size_t i = 0; agree && i < cs.size(); ++i)
      agree = certificate_to_json(cs[i]) == certificate_to_json(cp[i]);
    print_row("certify", ts, tp, agree);
  }
  if (kernel == "learn" || kernel == "all") {
    LocalHamiltonian h = make_preset("zz-chain-4", 7);
    FlatApprox flat = preset_flat(h, 0.5, 0.05, 1.0);
    PopInstance pop = assemble_pop(h, 0.5, 0.05, 1.0, TraceEstimator::exact(), flat);
    LearnOptions opts;
    opts.starts = 4;
    opts.max_iters = 60;
    opts.seed = 7;
    std::vector<double> ls, lp;
    int saved = max_threads();
    double ts = best_of(1, [&] {
      set_max_threads(1);
      ls = learn(pop, opts).first;
    });
    set_max_threads(saved);
    double tp = best_of(1, [&] { lp = learn(pop, opts).first; });
    print_row("learn", ts, tp, ls == lp);
  }
  return 0;
}
