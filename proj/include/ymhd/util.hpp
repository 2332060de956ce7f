#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace ymhd {

/// Worker cap for embarrassingly parallel loops; YMHD_THREADS overrides the
/// hardware count downwards.
inline int worker_cap() {
  static const int cap = [] {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("YMHD_THREADS")) {
      const long v = std::strtol(e, nullptr, 10);
      if (v >= 1 && v < long(hw)) hw = unsigned(v);
    }
    return int(hw);
  }();
  return cap;
}

}  // namespace ymhd
