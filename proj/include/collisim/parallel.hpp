// Copyright 2026 The collisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace collisim {

/// Evaluates fn(0) .. fn(n-1) on up to hardware_concurrency workers and returns
/// the results in index order, independent of completion order.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
  using Result = std::invoke_result_t<Fn, std::size_t>;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<Result> out;
  out.reserve(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<std::vector<Result>>> chunks;
  for (std::size_t w = 0; w < workers; ++w) {
    chunks.push_back(std::async(std::launch::async, [w, workers, n, &fn] {
      std::vector<Result> part;
      for (std::size_t i = w; i < n; i += workers) part.push_back(fn(i));
      return part;
    }));
  }
  std::vector<std::vector<Result>> parts;
  for (auto& c : chunks) parts.push_back(c.get());
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(parts[i % workers][i / workers]));
  return out;
}

}  // namespace collisim
