#include "mqspace/subspaces.hpp"

#include <cmath>
#include <sstream>

#include "mqspace/error.hpp"
#include "mqspace/random.hpp"

namespace mqspace {

std::string to_string(SubspaceTag tag) {
  switch (tag) {
    case SubspaceTag::LOMSO: return "LOMSO";
    case SubspaceTag::ZeroQuantum: return "ZeroQuantum";
    case SubspaceTag::EvenMQ: return "EvenMQ";
    case SubspaceTag::Full: return "Full";
  }
  return "?";
}

SubspaceTag parse_subspace_tag(const std::string& text) {
  for (SubspaceTag t : {SubspaceTag::LOMSO, SubspaceTag::ZeroQuantum, SubspaceTag::EvenMQ, SubspaceTag::Full}) {
    if (to_string(t) == text) return t;
  }
  throw ConfigError("bad_subspace", "unknown subspace tag '" + text + "'");
}

bool in_pattern(SubspaceTag tag, std::size_t row, std::size_t col) {
  switch (tag) {
    case SubspaceTag::LOMSO: return row == col;
    case SubspaceTag::ZeroQuantum: return SpinSystem::down_count(row) == SpinSystem::down_count(col);
    case SubspaceTag::EvenMQ: return ((SpinSystem::down_count(row) ^ SpinSystem::down_count(col)) & 1) == 0;
    case SubspaceTag::Full: return true;
  }
  return false;
}

SubspaceTag smallest_subspace(const Operator& q) {
  for (SubspaceTag t : {SubspaceTag::LOMSO, SubspaceTag::ZeroQuantum, SubspaceTag::EvenMQ}) {
    if (is_member(q, t, 0.0).member) return t;
  }
  return SubspaceTag::Full;
}

std::uint64_t block_dimension(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw ConfigError("block_index", "block index k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  // result * (n - k + i) is always divisible by i at step i.
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return result;
}

SubspaceDims subspace_dims(int n) {
  if (n < 1 || n > 31) throw ConfigError("spin_count", "subspace_dims needs 1 <= n <= 31");
  const std::uint64_t hilbert = std::uint64_t{1} << n;
  return SubspaceDims{hilbert, block_dimension(2 * n, n), std::uint64_t{1} << (2 * n - 1), hilbert * hilbert};
}

Membership is_member(const Operator& q, SubspaceTag tag, double tol) {
  const std::size_t dim = q.dim();
  double outside = 0.0;
  if (tag != SubspaceTag::Full) {
    for (std::size_t c = 0; c < dim; ++c) {
      for (std::size_t r = 0; r < dim; ++r) {
        if (!in_pattern(tag, r, c)) outside += std::norm(q(r, c));
      }
    }
  }
  const double residual = std::sqrt(outside);
  const double norm = q.frobenius_norm();
  return Membership{residual <= tol * norm, residual, norm};
}

Operator project(const Operator& q, SubspaceTag tag) {
  Matrix m = q.matrix();
  const std::size_t dim = q.dim();
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      if (!in_pattern(tag, r, c)) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 0.0;
    }
  }
  return Operator(q.system(), std::move(m), q.hermitian_hint());
}

std::vector<SelectiveBlock> selective_blocks(const SpinSystem& system) {
  std::vector<SelectiveBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(system.spins()) + 1);
  for (int k = 0; k <= system.spins(); ++k) blocks.push_back(SelectiveBlock{k, {}});
  for (std::size_t i = 0; i < system.dim(); ++i) {
    blocks[static_cast<std::size_t>(SpinSystem::down_count(i))].state_indices.push_back(i);
  }
  return blocks;
}

void require_zero_quantum(const Operator& q, const char* what, double tol) {
  const Membership m = is_member(q, SubspaceTag::ZeroQuantum, tol);
  if (!m.member) {
    std::ostringstream msg;
    msg << what << " is not zero-quantum: out-of-pattern residual " << m.residual << " (norm " << m.norm << ")";
    throw NumericalError("not_zero_quantum", msg.str(), m.residual);
  }
}

std::vector<BlockComponent> decompose_zq(const Operator& z) {
  require_zero_quantum(z, "decompose_zq input");
  const SpinSystem& sys = z.system();
  const auto dim = static_cast<Eigen::Index>(sys.dim());
  std::vector<BlockComponent> out;
  for (const SelectiveBlock& block : selective_blocks(sys)) {
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t c : block.state_indices) {
      for (std::size_t r : block.state_indices) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z(r, c);
      }
    }
    out.push_back(BlockComponent{block.k, Operator(sys, std::move(m), z.hermitian_hint())});
  }
  return out;
}

ClosureReport verify_closure(SubspaceTag tag, const SpinSystem& system, std::size_t trials, std::uint64_t seed) {
  if (tag == SubspaceTag::Full) throw ConfigError("bad_subspace", "closure is only checked for proper subspaces");
  ClosureReport report;
  report.tag = tag;
  report.spins = system.spins();
  report.trials = trials;
  report.identity_member = is_member(Operator::identity(system), tag).member;
  if (!report.identity_member) report.failures.push_back({0, "identity", 1.0});

  Rng rng(seed);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  auto check = [&](std::size_t trial, const char* what, const Operator& op) {
    const Membership m = is_member(op, tag);
    const double rel = m.norm > 0.0 ? m.residual / m.norm : m.residual;
    report.max_relative_residual = std::max(report.max_relative_residual, rel);
    if (!m.member) report.failures.push_back({trial, what, rel});
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const Operator a = random_member(system, tag, rng);
    const Operator b = random_member(system, tag, rng);
    const double ca = coeff(rng);
    const double cb = coeff(rng);
    check(t, "product", a * b);
    check(t, "commutator", commutator(a, b));
    check(t, "combination", ca * a + cb * b);
  }
  return report;
}

}  // namespace mqspace
