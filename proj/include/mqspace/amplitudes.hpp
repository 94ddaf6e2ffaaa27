#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqspace/propagator.hpp"

namespace mqspace {

struct RealAmplitude {
  std::string label;
  double value;
};

/// Amplitude of one off-diagonal zero-quantum matrix unit |row><col|.
struct CoherenceAmplitude {
  std::string label;  // shift label, e.g. "I1+I2-"
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Expansion of an evolved zero-quantum operator into the three groups of
/// terms: longitudinal magnetization I_kz, spin orders 2^(q-1) I_kz I_lz ...,
/// and zero-quantum coherences.
///
/// The diagonal part is expanded over Cartesian Z-products. The off-diagonal
/// zero-quantum part is expanded over the shift matrix units |r><c| with
/// popcount(r) == popcount(c), so every coherence coefficient is complex and
/// comes paired with its conjugate at |c><r|.
struct AmplitudeProfile {
  double time = 0.0;
  /// Coefficient of (1/2)E; zero for a traceless operator.
  double identity = 0.0;
  std::vector<RealAmplitude> longitudinal;  // I1z, I2z, ... by spin
  std::vector<RealAmplitude> spin_orders;   // by factor count, then spin indices
  std::vector<CoherenceAmplitude> zqc;      // row-major over the ZQ pattern
  /// Frobenius norm of (operator - reconstruction), including any imaginary
  /// diagonal part and any content outside the zero-quantum pattern.
  double residual = 0.0;
  bool purged = false;

  /// Looks up a label in any bin; "E" returns the identity coefficient.
  std::optional<Complex> amplitude(std::string_view label) const;
};

/// Bins an operator that should already lie in the zero-quantum subspace.
AmplitudeProfile profile_of(const Operator& evolved, double time);

/// Operator rebuilt from the bins.
Operator reconstruct(const SpinSystem& system, const AmplitudeProfile& profile);

/// Conjugates q by zq_propagator(z, t) and bins the result.
/// Requires z Hermitian zero-quantum and q traceless Hermitian zero-quantum;
/// violations throw NumericalError("precondition") with the residual.
AmplitudeProfile amplitude_profile(const Operator& z, const Operator& q, double t);

/// Shared precondition check of amplitude_profile and the diffusion runs.
void require_profile_preconditions(const Operator& z, const Operator& q);

}  // namespace mqspace
