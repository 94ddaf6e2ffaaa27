#include "mqspace/spin_system.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "mqspace/error.hpp"

namespace mqspace {

SpinSystem::SpinSystem(int spins, int max_spins) : spins_(spins) {
  if (spins < 1 || spins > max_spins) {
    throw ConfigError("spin_count",
                      "spin count " + std::to_string(spins) + " outside [1, " +
                          std::to_string(max_spins) + "]");
  }
}

int SpinSystem::down_count(std::size_t index) {
  return std::popcount(static_cast<std::uint64_t>(index));
}

int max_spins_from_environment() {
  const char* raw = std::getenv("MQSPACE_MAX_N");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxSpins;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  // 2^n complex doubles per row; beyond ~15 the dense matrices do not fit anyway.
  if (*end != '\0' || value < 1 || value > 20) {
    throw ConfigError("max_spins_env", std::string("MQSPACE_MAX_N is not an integer in [1, 20]: ") + raw);
  }
  return static_cast<int>(value);
}

}  // namespace mqspace
