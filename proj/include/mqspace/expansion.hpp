#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mqspace/base_operator.hpp"

namespace mqspace {

struct ExpansionTerm {
  BaseOperatorSpec spec;
  Complex coefficient;
};

/// Coefficients of an operator over a set of base operators.
struct OperatorExpansion {
  BasisKind basis_kind = BasisKind::Cartesian;
  std::vector<ExpansionTerm> terms;
  /// Frobenius norm of (source - reconstruction).
  double residual = 0.0;

  std::optional<Complex> coefficient(std::string_view label) const;
};

/// Expands q over the complete basis of the given kind, in enumeration order.
/// Each coefficient equals hs_inner(B, q) / hs_inner(B, B).
OperatorExpansion expand(const Operator& q, BasisKind kind);

/// sum_i c_i B_i. Terms need not cover the whole basis.
Operator reconstruct(const SpinSystem& system, const OperatorExpansion& expansion);

/// Cartesian coefficients of a diagonal operator, indexed by the bit mask of
/// its Z factors (spin 1 = most significant bit); index 0 is the (1/2)E term.
std::vector<double> longitudinal_coefficients(std::span<const double> diagonal, int spins);

/// Inverse of longitudinal_coefficients.
std::vector<double> diagonal_from_longitudinal(std::span<const double> coefficients, int spins);

/// Cartesian spec with Z on every spin in `mask` and E elsewhere.
BaseOperatorSpec longitudinal_spec(int spins, std::size_t mask);

}  // namespace mqspace
