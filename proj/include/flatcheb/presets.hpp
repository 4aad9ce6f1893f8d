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

#ifndef FLATCHEB_PRESETS_HPP
#define FLATCHEB_PRESETS_HPP

#include <string>

#include "flatcheb/pop.hpp"

namespace flatcheb {

/// Named experiment fixtures, the smallest instances with nontrivial
/// interaction graphs:
///   single-qubit : H = 0.7 Z on one qubit (m = 1)
///   zz-chain-4   : periodic ZZ chain on 4 qubits (m = 4), couplings drawn
///                  uniformly from [-0.9, 0.9] with the given seed
///   tfim-4       : open ZZ chain plus X fields on 4 qubits (m = 7), same rule
LocalHamiltonian make_preset(const std::string& name, std::uint64_t seed);

/// Flat approximation sized for a preset instance: t covers the spectral
/// diameter of beta * ad_H (2 beta sum|lambda| plus margin) and the accuracy
/// target tracks the derived requirement for (CkG, beta, eps).
FlatApprox preset_flat(const LocalHamiltonian& h, double beta, double eps, double CkG);

}  // namespace flatcheb

#endif  // FLATCHEB_PRESETS_HPP
