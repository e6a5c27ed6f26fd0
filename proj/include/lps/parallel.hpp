#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

namespace lps {

/// Worker count: set_thread_count() override, else LOEWNER_PS_THREADS, else all
/// cores. Results of the drivers below never depend on this value.
std::size_t thread_count();
/// 0 restores the environment/default behaviour.
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, count). Each index must write only its own slot.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
}

/// Smallest i in [0, count) with pred(i) true. Evaluates in ordered blocks so
/// the answer matches a sequential scan.
template <class Pred>
std::optional<std::size_t> find_first(std::size_t count, Pred&& pred) {
  const std::size_t block = std::max<std::size_t>(64, thread_count() * 16);
  std::vector<char> hit;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t len = std::min(block, count - start);
    hit.assign(len, 0);
    parallel_for(len, [&](std::size_t k) { hit[k] = pred(start + k) ? 1 : 0; });
    for (std::size_t k = 0; k < len; ++k)
      if (hit[k]) return start + k;
  }
  return std::nullopt;
}

}  // namespace lps
