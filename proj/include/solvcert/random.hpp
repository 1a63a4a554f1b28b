#pragma once

#include <cstdint>
#include <random>

namespace solvcert {

/// Engine for task `task` of a run seeded with `seed`. Each task gets its own
/// stream so results do not depend on how tasks are scheduled across threads.
inline std::mt19937_64 task_engine(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace solvcert
