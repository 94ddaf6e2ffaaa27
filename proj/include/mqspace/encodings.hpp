#pragma once

#include <vector>

#include "mqspace/operator.hpp"

namespace mqspace {

/// An ordering of the product basis: position -> computational index.
class Encoding {
 public:
  /// Throws ConfigError unless `permutation` is a bijection on 0..size-1.
  explicit Encoding(std::vector<std::size_t> permutation);

  static Encoding identity(std::size_t size);

  const std::vector<std::size_t>& permutation() const { return permutation_; }
  /// computational index -> position.
  const std::vector<std::size_t>& inverse() const { return inverse_; }
  std::size_t size() const { return permutation_.size(); }

  /// The encoding that undoes this one under reencode.
  Encoding inverted() const { return Encoding(inverse_); }

  /// Cycles of the map j -> position(j), each starting at its smallest element,
  /// ordered by that element. Fixed points are omitted.
  std::vector<std::vector<std::size_t>> cycles() const;

 private:
  std::vector<std::size_t> permutation_;
  std::vector<std::size_t> inverse_;
};

/// Product states ordered by non-increasing total magnetization, ties kept in
/// ascending computational order.
Encoding iz_sorted_encoding(const SpinSystem& system);

/// P with P e_j = e_{position(j)}, i.e. P(i, permutation[i]) = 1.
Operator permutation_matrix(const Encoding& enc, const SpinSystem& system);

/// Swap of basis states i and j, realized as exp(-i * angle * G) with
/// G = |psi><psi|, |psi> = (e_i - e_j) / sqrt(2) and angle = pi.
struct SwapGenerator {
  std::size_t i;
  std::size_t j;
  double angle;

  Operator generator(const SpinSystem& system) const;
  /// Closed form 1 - 2G of the exponential.
  Operator unitary(const SpinSystem& system) const;
};

/// Transpositions whose exponentials multiply, in list order from left to
/// right, to permutation_matrix(enc). A cycle (a1 a2 ... ak) is unrolled as
/// (a1 ak)(a1 a(k-1))...(a1 a2).
std::vector<SwapGenerator> synthesize_permutation(const Encoding& enc);

/// P q P^dagger, computed by re-indexing.
Operator reencode(const Operator& q, const Encoding& enc);

}  // namespace mqspace
