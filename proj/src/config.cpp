#include "weylcover/config.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace weylcover {

std::size_t configured_thread_count() {
  if (const char* env = std::getenv("WEYLCOVER_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    // 0 or malformed falls through to auto
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace weylcover
