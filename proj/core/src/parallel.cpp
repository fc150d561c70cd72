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

#include "rkwave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rkwave {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t w =
      std::min<std::size_t>(n, static_cast<std::size_t>(resolve_workers(workers)));
  std::exception_ptr first;
  std::size_t first_index = n;
  std::mutex mu;
  auto record = [&](std::size_t i) {
    std::lock_guard<std::mutex> lock(mu);
    if (i < first_index) {
      first_index = i;
      first = std::current_exception();
    }
  };
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        record(i);
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            record(i);
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace rkwave
