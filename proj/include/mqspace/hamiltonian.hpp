#pragma once

#include <string>
#include <vector>

#include "mqspace/expansion.hpp"

namespace mqspace {

/// Coupling models. Angular frequencies in rad/s.
///   FlipFlop        sum J_kl (I_k+ I_l- + I_k- I_l+) / 2
///   DipolarSecular  sum J_kl (2 I_kz I_lz - (I_k+ I_l- + I_k- I_l+) / 2)
///   IsotropicJ      sum J_kl (I_kx I_lx + I_ky I_ly + I_kz I_lz)
///   Offsets         sum Omega_k I_kz only
///   Custom          explicit expansion over base-operator labels
/// Offsets are added on top of every model.
enum class HamiltonianModel { FlipFlop, DipolarSecular, IsotropicJ, Offsets, Custom };

std::string to_string(HamiltonianModel model);

/// Accepts "flipflop", "dipolar_secular", "isotropic_j", "offsets", "custom".
HamiltonianModel parse_hamiltonian_model(const std::string& text);

struct Coupling {
  int k;  // 1-based
  int l;  // 1-based, k != l
  double j;
};

struct Offset {
  int k;
  double omega;
};

struct HamiltonianSpec {
  HamiltonianModel model = HamiltonianModel::FlipFlop;
  std::vector<Coupling> couplings;
  std::vector<Offset> offsets;
  OperatorExpansion custom;
};

/// Throws ConfigError for bad spin indices, k == l, repeated pairs or repeated
/// offsets, and NumericalError("not_hermitian") for a non-Hermitian custom spec.
Operator build_hamiltonian(const SpinSystem& system, const HamiltonianSpec& spec);

}  // namespace mqspace
