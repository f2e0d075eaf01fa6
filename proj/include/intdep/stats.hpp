#pragma once

#include <atomic>
#include <cstdint>

namespace intdep {

/// Process-wide engine counters, reported alongside results.
struct EngineStats {
  std::atomic<std::uint64_t> gb_runs{0};
  std::atomic<std::uint64_t> spairs_reduced{0};
  std::atomic<std::uint64_t> max_gb_size{0};
  std::atomic<std::uint64_t> max_coeff_bits{0};
  std::atomic<std::uint64_t> cache_hits{0};
  std::atomic<std::uint64_t> cache_misses{0};

  void reset() {
    gb_runs = 0;
    spairs_reduced = 0;
    max_gb_size = 0;
    max_coeff_bits = 0;
    cache_hits = 0;
    cache_misses = 0;
  }

  static void raise_to(std::atomic<std::uint64_t>& slot, std::uint64_t value) {
    std::uint64_t cur = slot.load();
    while (cur < value && !slot.compare_exchange_weak(cur, value)) {
    }
  }
};

inline EngineStats& engine_stats() {
  static EngineStats stats;
  return stats;
}

}  // namespace intdep
