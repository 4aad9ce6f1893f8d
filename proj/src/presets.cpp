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

#include "flatcheb/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace flatcheb {

namespace {

std::vector<double> draw_couplings(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::vector<double> c(m);
  for (auto& x : c) x = u(rng);
  return c;
}

PauliString zz_pair(int n, int i, int j) {
  std::vector<PauliLetter> l(n, PauliLetter::I);
  l[i] = PauliLetter::Z;
  l[j] = PauliLetter::Z;
  return PauliString(n, std::move(l));
}

PauliString x_field(int n, int i) {
  std::vector<PauliLetter> l(n, PauliLetter::I);
  l[i] = PauliLetter::X;
  return PauliString(n, std::move(l));
}

}  // namespace

LocalHamiltonian make_preset(const std::string& name, std::uint64_t seed) {
  if (name == "single-qubit") {
    return LocalHamiltonian(1, 1, {PauliString::parse("Z")}, {0.7});
  }
  if (name == "zz-chain-4") {
    int n = 4;
    std::vector<PauliString> terms{zz_pair(n, 0, 1), zz_pair(n, 1, 2), zz_pair(n, 2, 3),
                                   zz_pair(n, 3, 0)};
    return LocalHamiltonian(n, 2, std::move(terms), draw_couplings(4, seed));
  }
  if (name == "tfim-4") {
    int n = 4;
    std::vector<PauliString> terms{zz_pair(n, 0, 1), zz_pair(n, 1, 2), zz_pair(n, 2, 3),
                                   x_field(n, 0),    x_field(n, 1),    x_field(n, 2),
                                   x_field(n, 3)};
    return LocalHamiltonian(n, 2, std::move(terms), draw_couplings(7, seed));
  }
  throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

FlatApprox preset_flat(const LocalHamiltonian& h, double beta, double eps, double CkG) {
  double norm_bound = 0.0;
  for (double c : h.couplings) norm_bound += std::abs(c);
  double t = std::max(1.0, 1.1 * 2.0 * beta * norm_bound);
  double delta_req = 1e-4 * std::pow(2.0, CkG * beta) * std::log(1.0 / eps);
  double eps_flat = std::min(0.99 * delta_req, 1e-3);
  double eta = std::min(0.5, 0.99 * 5.0 / (CkG * beta));
  return build_flat(choose_flat_params(eps_flat, eta, t));
}

}  // namespace flatcheb
