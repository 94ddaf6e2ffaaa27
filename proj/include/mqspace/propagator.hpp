#pragma once

#include <vector>

#include "mqspace/subspaces.hpp"

namespace mqspace {

/// Throws NumericalError("not_hermitian") unless asymmetry <= tol * norm.
void require_hermitian(const Operator& h, const char* what, double tol = kMembershipTolerance);

/// Eigendecomposition of a Hermitian generator, shared by every time point.
/// Const after construction and safe to read from several threads.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Operator& h);

  /// exp(-i h t).
  Operator at(double t) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

 private:
  SpinSystem system_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

/// exp(-i h t) for Hermitian h through a full-space eigendecomposition.
Operator expm_hermitian(const Operator& h, double t);

/// Spectrum of one d(k) x d(k) diagonal block of a zero-quantum generator.
struct BlockSpectrum {
  SelectiveBlock block;
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;

  /// exp(-i z_kk t), d(k) x d(k).
  Matrix exponential(double t) const;
};

BlockSpectrum block_spectrum(const Operator& z, const SelectiveBlock& block);

/// Propagator of a Hermitian zero-quantum generator, exponentiated one
/// selective block at a time. Construction verifies the generator.
class ZeroQuantumPropagator {
 public:
  explicit ZeroQuantumPropagator(const Operator& z);

  /// Full-space U(t), block-diagonal over the selective blocks.
  Operator at(double t) const;

  /// U(t) q U(t)^dagger for a zero-quantum q, computed block by block.
  Operator evolve(const Operator& q, double t) const;

  const std::vector<BlockSpectrum>& blocks() const { return blocks_; }

 private:
  SpinSystem system_;
  std::vector<BlockSpectrum> blocks_;
};

/// exp(-i z t) for a Hermitian zero-quantum z, built block-wise.
Operator zq_propagator(const Operator& z, double t);

/// u q u^dagger.
Operator conjugate(const Operator& u, const Operator& q);

/// Evolves a block-k operator using only the k-th block of z.
/// Throws NumericalError("off_block_support") if q_k leaks out of S(k) x S(k).
Operator blockwise_conjugate(const Operator& z, const Operator& q_k, int k, double t);

/// Evolver for a single selective block; the eigendecomposition is reused across t.
class BlockEvolver {
 public:
  BlockEvolver(const Operator& z, int k);

  /// Evolves q_k, which must be supported on the block.
  Operator evolve(const Operator& q_k, double t) const;

  /// Same, on the extracted d(k) x d(k) block.
  Matrix evolve_block(const Matrix& q_block, double t) const;

  const BlockSpectrum& spectrum() const { return spectrum_; }

 private:
  SpinSystem system_;
  BlockSpectrum spectrum_;
};

/// Frobenius norm of q outside S(k) x S(k).
double off_block_residual(const Operator& q, int k);

}  // namespace mqspace
