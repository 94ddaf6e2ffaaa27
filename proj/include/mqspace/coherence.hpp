#pragma once

#include <map>

#include "mqspace/operator.hpp"

namespace mqspace {

/// Coherence order of the matrix element |row><col|:
/// p = popcount(col) - popcount(row) = m(row) - m(col).
/// Throws ConfigError("index_range") for indices >= dim.
int coherence_order_of_element(const SpinSystem& system, std::size_t row, std::size_t col);

/// Splits q by coherence order. Component p keeps exactly the elements of
/// order p; only orders with a non-zero element appear as keys.
std::map<int, Operator> order_components(const Operator& q);

/// Frobenius norm of the elements of q whose order differs from p.
double off_order_residual(const Operator& q, int p);

}  // namespace mqspace
