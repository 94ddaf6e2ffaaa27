#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqspace/operator.hpp"

namespace mqspace {

struct OrderViolation {
  std::size_t trial;
  std::string base_label;
  std::string product;  // "left", "right", "commutator"
  double residual;
};

struct OrderPreservationReport {
  int spins = 0;
  std::size_t trials = 0;
  std::size_t checks = 0;
  double max_left = 0.0;
  double max_right = 0.0;
  double max_commutator = 0.0;
  std::vector<OrderViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// For random zero-quantum Z and every shift base operator Q_p, checks that
/// Z Q_p, Q_p Z and [Z, Q_p] keep all their weight at order p (residual at
/// other orders <= 1e-10 relative to the norm of Z).
OrderPreservationReport verify_order_preservation(const SpinSystem& system, std::size_t trials,
                                                  std::uint64_t seed);

struct ExtremeStateViolation {
  std::string source;  // base label, or "random#<i>"
  double residual;
};

struct ExtremeStatesReport {
  int spins = 0;
  std::size_t basis_checked = 0;
  std::size_t random_checked = 0;
  double max_residual = 0.0;
  std::vector<ExtremeStateViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Zero-quantum coherence operators (zero-quantum members with a zero
/// diagonal) annihilate both the all-up and the all-down state. Checked
/// exactly over every off-diagonal zero-quantum matrix unit, and by
/// eigendecomposition over `random_trials` Hermitian combinations.
ExtremeStatesReport verify_extreme_states(const SpinSystem& system, std::size_t random_trials = 50,
                                          std::uint64_t seed = 0);

}  // namespace mqspace
