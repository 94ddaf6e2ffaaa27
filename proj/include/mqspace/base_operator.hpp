#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqspace/operator.hpp"

namespace mqspace {

enum class BasisKind { Cartesian, Shift };

/// Single-spin factors. Cartesian uses {E, X, Y, Z}; shift uses
/// {Alpha, Beta, Plus, Minus}.
enum class Factor : std::uint8_t { E, X, Y, Z, Alpha, Beta, Plus, Minus };

bool is_cartesian(Factor f);

/// Standard spin-1/2 matrix for a factor (index 0 = up).
Eigen::Matrix2cd single_spin_matrix(Factor f);

/// Symbolic product base operator.
///
/// Cartesian products carry the 2^(q-1) prefactor, q = number of non-E
/// factors, so the unity element is (1/2)E and two-spin products such as
/// 2I1zI2z are unit-norm at n = 2. Shift products are matrix units.
///
/// Label grammar (case-sensitive, spins 1-indexed, ascending):
///   Cartesian: "E", "I3x", "2I1zI2z", "4I1zI2zI3z"
///   Shift:     one token per spin, "I<k>+", "I<k>-", "a<k>", "b<k>",
///              e.g. "I1+I2-", "a1b2", "I1+a2I3-"
class BaseOperatorSpec {
 public:
  /// Throws ConfigError when a factor does not belong to `kind`.
  BaseOperatorSpec(BasisKind kind, std::vector<Factor> factors);

  /// Parses a canonical label for an n-spin system. The basis kind is
  /// inferred from the tokens. Throws ConfigError on malformed input.
  static BaseOperatorSpec parse(std::string_view label, int spins);

  BasisKind kind() const { return kind_; }
  std::span<const Factor> factors() const { return factors_; }
  int spins() const { return static_cast<int>(factors_.size()); }
  Factor factor(int k) const { return factors_[static_cast<std::size_t>(k - 1)]; }

  std::string label() const;

  /// 2^(q-1) for Cartesian, 1 for shift.
  double prefactor() const;

  /// Number of non-E factors (Cartesian) or non-projector factors (shift).
  int active_count() const;

  /// Number of X/Y (Cartesian) or Plus/Minus (shift) factors.
  int transverse_count() const;

  /// Number of Z factors; zero for shift specs.
  int longitudinal_count() const;

  /// True for products made only of E and Z, or only of Alpha and Beta.
  bool is_diagonal() const { return transverse_count() == 0; }

  /// #Plus - #Minus; only meaningful for shift specs.
  int shift_order() const;

  friend bool operator==(const BaseOperatorSpec&, const BaseOperatorSpec&) = default;

 private:
  BasisKind kind_;
  std::vector<Factor> factors_;
};

Operator build_operator(const SpinSystem& system, const BaseOperatorSpec& spec);

/// Operator of a single factor acting on spin k (1-based), identity elsewhere.
Operator single_spin_operator(const SpinSystem& system, int k, Factor f);

/// All 4^n base operators. Cartesian: base-4 digits (E, X, Y, Z) with spin 1
/// most significant. Shift: matrix units |r><c| in row-major order.
std::vector<BaseOperatorSpec> enumerate_basis(const SpinSystem& system, BasisKind kind);

/// Shift spec of the matrix unit |row><col|.
BaseOperatorSpec matrix_unit_spec(const SpinSystem& system, std::size_t row, std::size_t col);

/// Cartesian spec from base-4 digits, the inverse of the enumeration order.
BaseOperatorSpec cartesian_spec_from_index(const SpinSystem& system, std::size_t index);

namespace detail {

/// Adds scale * (tensor product of factors) into `target`; every factor has at
/// most one non-zero per row, so this costs O(dim * n).
void accumulate_product(Matrix& target, std::span<const Factor> factors, Complex scale);

}  // namespace detail

}  // namespace mqspace
