#pragma once

#include <array>
#include <vector>

#include "mqspace/subspaces.hpp"

namespace mqspace {

inline constexpr double kStageTolerance = 1e-8;

/// A partition of the computational indices 0..dim-1 into cells.
using Partition = std::vector<std::vector<std::size_t>>;

/// Two cells: even and odd down-spin count.
Partition parity_partition(const SpinSystem& system);
/// n + 1 cells by down-spin count.
Partition popcount_partition(const SpinSystem& system);
/// One cell per basis state.
Partition singleton_partition(const SpinSystem& system);

/// Frobenius norm of the elements of h that connect different cells.
double off_partition_residual(const Operator& h, const Partition& partition);

struct StageResult {
  Operator unitary;
  Operator reduced;  // V h V^dagger
  double residual;   // off_partition_residual(reduced, target)
  bool fallback_used;
};

/// Finds a unitary V, restricted to the block pattern of `constraint`, with
/// V h V^dagger block-diagonal over `target`.
///
/// Each coarse block of the constraint is handled independently. Its
/// eigenvectors are assigned to target cells by descending overlap under the
/// cell capacities, and V is the unitary polar factor of
/// sum_cells P_cell Q_cell, which rotates each assigned eigenspace onto its
/// cell. A near-singular polar factor falls back to mapping eigenvectors
/// straight onto cell basis states.
///
/// Throws ConfigError if `target` is not a partition refining the constraint's
/// blocks and NumericalError if h is not Hermitian or not block-diagonal over
/// the constraint within kStageTolerance.
StageResult stage_reduce(const Operator& h, const Partition& target, SubspaceTag constraint);

struct CascadeResult {
  std::array<StageResult, 3> stages;
  /// Out-of-pattern Frobenius norms of h1, h2, h3 against EvenMQ, ZeroQuantum, LOMSO.
  std::array<double, 3> residuals;
  /// Membership of h1/h2/h3 in EvenMQ/ZeroQuantum/LOMSO at kStageTolerance.
  std::array<bool, 3> stage_members;
  Membership v2_even_mq;
  Membership v3_zero_quantum;
  /// max |sorted eig(H) - sorted diag(h3)|.
  double spectrum_deviation;
  bool spectrum_preserved;

  const Operator& v(int stage) const { return stages[static_cast<std::size_t>(stage - 1)].unitary; }
  const Operator& h(int stage) const { return stages[static_cast<std::size_t>(stage - 1)].reduced; }
  bool passed() const;
};

/// Full space -> even-order MQ -> zero-quantum -> LOMSO.
CascadeResult cascade(const Operator& h);

}  // namespace mqspace
