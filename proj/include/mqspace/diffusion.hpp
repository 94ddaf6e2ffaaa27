#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqspace/amplitudes.hpp"
#include "mqspace/hamiltonian.hpp"

namespace mqspace {

struct DiffusionConfig {
  SpinSystem system{1};
  HamiltonianSpec hamiltonian;
  /// Label of a traceless diagonal Cartesian base operator.
  std::string initial = "I1z";
  /// Strictly increasing, non-negative, seconds.
  std::vector<double> times;
  bool purge = false;
  /// Labels to follow; std::nullopt tracks every label of every bin.
  std::optional<std::vector<std::string>> track;
};

/// Evenly spaced grid of `steps` points from start to end inclusive.
std::vector<double> time_grid(double start, double end, std::size_t steps);

struct BlockCost {
  int k;
  std::uint64_t entries;  // d(k)^2
};

struct DiffusionTrace {
  std::vector<AmplitudeProfile> profiles;
  /// Tracked label -> one amplitude per time point.
  std::vector<std::pair<std::string, std::vector<Complex>>> channels;
  /// Labels of the spin-order and coherence bins among the tracked ones.
  std::vector<std::string> undesired;
  /// hs_inner(F_z, rho(t)).
  std::vector<double> conserved;
  /// Per-block arithmetic sizes; empty for the full-space engine.
  std::vector<BlockCost> block_costs;

  const std::vector<Complex>& channel(const std::string& label) const;
};

/// Evolves the initial operator through amplitude_profile at each time.
/// Throws ConfigError for a bad initial label, grid or track label, and
/// NumericalError("precondition") for a non-zero-quantum Hamiltonian.
DiffusionTrace run_diffusion(const DiffusionConfig& config);

/// Same observable, computed by decompose_zq and independent block evolution.
DiffusionTrace run_blockwise(const DiffusionConfig& config);

/// Zeroes the spin-order and coherence bins. Idempotent.
AmplitudeProfile purge(const AmplitudeProfile& profile);

struct BlockCostSummary {
  std::uint64_t blockwise_entries;  // sum_k d(k)^2 = C(2n, n)
  std::uint64_t full_entries;       // 4^n
  double ratio;
};

BlockCostSummary block_cost(int n);

}  // namespace mqspace
