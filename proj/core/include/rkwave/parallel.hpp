// Copyright 2026 The rkwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RKWAVE_PARALLEL_HPP_
#define RKWAVE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace rkwave {

// 0 means "all hardware threads".
int resolve_workers(int requested);

// Runs fn(i) for i in [0, n) on up to `workers` threads.  Results must be
// written to per-index slots; if any call throws, the exception from the
// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace rkwave

#endif  // RKWAVE_PARALLEL_HPP_
