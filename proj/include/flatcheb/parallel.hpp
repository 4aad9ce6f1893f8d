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

#ifndef FLATCHEB_PARALLEL_HPP
#define FLATCHEB_PARALLEL_HPP

namespace flatcheb {

/// Worker-count cap for the OpenMP kernels. 0 means "whatever OpenMP gives us".
/// Every parallel kernel in the library has a serial reference twin; results
/// are identical because the parallel versions only split index ranges and
/// reduce with order-independent operations.
void set_max_threads(int n);
int max_threads();

/// Effective thread count a kernel will use.
int effective_threads();

}  // namespace flatcheb

#endif  // FLATCHEB_PARALLEL_HPP
