#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <vector>

namespace relaxlab {

/// Evaluates fn(0..n-1) on up to `threads` workers; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t n, int threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out;
  out.reserve(n);
  const std::size_t width = static_cast<std::size_t>(std::max(1, threads));
  if (width == 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
  }
  for (std::size_t start = 0; start < n; start += width) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < std::min(n, start + width); ++i) {
      batch.push_back(std::async(std::launch::async, fn, i));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

}  // namespace relaxlab
