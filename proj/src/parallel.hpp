// Copyright 2026 The csa-measure Authors
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

#pragma once

#include <functional>

namespace csa {

/// Environment variable read for the worker-thread count.
inline constexpr const char* kThreadCountVariable = "CSA_NUM_THREADS";

/// Worker count from CSA_NUM_THREADS, else hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n), split into contiguous chunks across workers.
/// `body` must only write state owned by index i.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace csa
