#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mqspace/operator.hpp"

namespace mqspace {

/// Nested operator subspaces, smallest first. Membership is defined by the
/// support pattern of matrix elements |r><c|:
///   LOMSO        r == c
///   ZeroQuantum  popcount(r) == popcount(c)
///   EvenMQ       popcount(r) == popcount(c) (mod 2)
///   Full         any element
enum class SubspaceTag { LOMSO, ZeroQuantum, EvenMQ, Full };

inline constexpr double kMembershipTolerance = 1e-10;

std::string to_string(SubspaceTag tag);

/// Parses "LOMSO", "ZeroQuantum", "EvenMQ", "Full". Throws ConfigError.
SubspaceTag parse_subspace_tag(const std::string& text);

/// Whether element (row, col) lies in the tag's support pattern.
bool in_pattern(SubspaceTag tag, std::size_t row, std::size_t col);

/// Smallest tag whose pattern contains every non-zero element of q.
SubspaceTag smallest_subspace(const Operator& q);

/// Exact binomial coefficient n choose k. Throws ConfigError if k is outside [0, n].
std::uint64_t block_dimension(int n, int k);

struct SubspaceDims {
  std::uint64_t lomso;
  std::uint64_t zero_quantum;
  std::uint64_t even_mq;
  std::uint64_t full;
};

/// Element-pattern dimensions: 2^n, C(2n, n), 2^(2n-1), 4^n.
SubspaceDims subspace_dims(int n);

struct Membership {
  bool member;
  /// Frobenius norm of the elements outside the pattern.
  double residual;
  double norm;
};

/// Member iff residual <= tol * frobenius_norm(q).
Membership is_member(const Operator& q, SubspaceTag tag, double tol = kMembershipTolerance);

/// Zeroes every element outside the tag's pattern. Preserves the Hermiticity hint.
Operator project(const Operator& q, SubspaceTag tag);

/// The k-th eigenspace S(k) of F_z: the computational states with k down spins.
struct SelectiveBlock {
  int k;
  std::vector<std::size_t> state_indices;  // strictly ascending
  std::size_t dimension() const { return state_indices.size(); }
};

/// n + 1 blocks, k = 0..n, partitioning 0..2^n - 1.
std::vector<SelectiveBlock> selective_blocks(const SpinSystem& system);

struct BlockComponent {
  int k;
  Operator component;  // P_k z P_k, zero outside S(k) x S(k)
};

/// Splits a zero-quantum operator into its selective-block components.
/// Throws NumericalError("not_zero_quantum") carrying the out-of-pattern residual.
std::vector<BlockComponent> decompose_zq(const Operator& z);

/// Throws NumericalError("not_zero_quantum") unless q is a ZQ member at tol.
void require_zero_quantum(const Operator& q, const char* what, double tol = kMembershipTolerance);

struct ClosureFailure {
  std::size_t trial;
  std::string check;  // "product", "commutator", "combination", "identity"
  double relative_residual;
};

struct ClosureReport {
  SubspaceTag tag = SubspaceTag::Full;
  int spins = 0;
  std::size_t trials = 0;
  double max_relative_residual = 0.0;
  bool identity_member = false;
  std::vector<ClosureFailure> failures;
  bool passed() const { return failures.empty() && identity_member; }
};

/// Draws random Hermitian members A, B of the tag and checks that A*B,
/// [A, B] and real combinations aA + bB stay members at kMembershipTolerance.
/// Tag must be LOMSO, ZeroQuantum or EvenMQ.
ClosureReport verify_closure(SubspaceTag tag, const SpinSystem& system, std::size_t trials,
                             std::uint64_t seed);

}  // namespace mqspace
