#pragma once

#include <complex>

#include <Eigen/Dense>

#include "mqspace/spin_system.hpp"

namespace mqspace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Hermiticity { Yes, No, Unknown };

/// Dense operator on the 2^n-dimensional Hilbert space of a spin system.
///
/// Immutable once built. A hint of Hermiticity::Yes is verified on
/// construction: the largest entry of (A - A^dagger) must not exceed
/// 1e-12 times the Frobenius norm.
class Operator {
 public:
  Operator(SpinSystem system, Matrix entries, Hermiticity hint = Hermiticity::Unknown);

  static Operator zero(const SpinSystem& system);
  static Operator identity(const SpinSystem& system);

  /// Marks the result Hermitian if its asymmetry passes the construction bound,
  /// otherwise Unknown. Use after arithmetic that should preserve Hermiticity.
  static Operator classify(SpinSystem system, Matrix entries);

  const SpinSystem& system() const { return system_; }
  const Matrix& matrix() const { return entries_; }
  Hermiticity hermitian_hint() const { return hint_; }
  std::size_t dim() const { return system_.dim(); }

  Complex operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

  double frobenius_norm() const { return entries_.norm(); }

  /// max |A - A^dagger| over entries.
  double asymmetry() const;

  Complex trace() const { return entries_.trace(); }

  Operator adjoint() const;

 private:
  SpinSystem system_;
  Matrix entries_;
  Hermiticity hint_;
};

/// Throws ConfigError("dimension_mismatch") when the two systems differ.
void require_same_system(const Operator& a, const Operator& b);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const Operator& a, const Operator& b);

/// True if asymmetry <= tol * max(frobenius, tiny). Skips the scan when hinted Yes.
bool is_hermitian(const Operator& op, double tol);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex scale, const Operator& a);
Operator operator*(double scale, const Operator& a);

/// [a, b] = ab - ba.
Operator commutator(const Operator& a, const Operator& b);

/// Total longitudinal spin operator F_z = sum_k I_kz.
Operator total_z(const SpinSystem& system);

}  // namespace mqspace
