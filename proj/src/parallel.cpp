#include "lps/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lps {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t thread_count() {
  if (const auto o = g_override.load(); o > 0) return o;
  if (const char* env = std::getenv("LOEWNER_PS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // malformed value: fall through to the default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(std::size_t n) { g_override.store(n); }

}  // namespace lps
