#pragma once

#include <cstddef>
#include <cstdint>

namespace mqspace {

inline constexpr int kDefaultMaxSpins = 12;

/// An ensemble of n spin-1/2 particles with Hilbert dimension 2^n.
///
/// Computational index convention: bit value 0 means "up" (m = +1/2), and
/// spin 1 is the most significant bit. With that convention the total
/// magnetization of basis state i is n/2 - popcount(i).
class SpinSystem {
 public:
  /// Throws ConfigError unless 1 <= spins <= max_spins.
  explicit SpinSystem(int spins, int max_spins = kDefaultMaxSpins);

  int spins() const { return spins_; }
  std::size_t dim() const { return std::size_t{1} << spins_; }

  /// Bit mask of spin k (1-based) inside a computational index.
  std::size_t spin_mask(int k) const { return std::size_t{1} << (spins_ - k); }

  /// Down-spin count of basis state i.
  static int down_count(std::size_t index);

  /// Twice the magnetization quantum number, 2*m(i) = n - 2*popcount(i).
  int twice_magnetization(std::size_t index) const {
    return spins_ - 2 * down_count(index);
  }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int spins_;
};

/// Reads MQSPACE_MAX_N from the environment, falling back to kDefaultMaxSpins.
int max_spins_from_environment();

}  // namespace mqspace
