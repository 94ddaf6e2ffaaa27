#include "mqspace/propagator.hpp"

#include <cmath>
#include <sstream>

#include "mqspace/error.hpp"

namespace mqspace {

namespace {

std::vector<Eigen::Index> as_index(const std::vector<std::size_t>& idx) {
  return {idx.begin(), idx.end()};
}

Matrix spectral_exponential(const Eigen::VectorXd& values, const Matrix& vectors, double t) {
  const Eigen::VectorXcd phases =
      values.unaryExpr([t](double lambda) { return std::polar(1.0, -lambda * t); });
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

}  // namespace

void require_hermitian(const Operator& h, const char* what, double tol) {
  if (is_hermitian(h, tol)) return;
  std::ostringstream msg;
  msg << what << " is not Hermitian: asymmetry " << h.asymmetry() << " (norm " << h.frobenius_norm() << ")";
  throw NumericalError("not_hermitian", msg.str(), h.asymmetry());
}

SpectralPropagator::SpectralPropagator(const Operator& h) : system_(h.system()) {
  require_hermitian(h, "generator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw InvariantError("eigensolver", "Hermitian eigensolver did not converge");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Operator SpectralPropagator::at(double t) const {
  return Operator(system_, spectral_exponential(eigenvalues_, eigenvectors_, t));
}

Operator expm_hermitian(const Operator& h, double t) { return SpectralPropagator(h).at(t); }

Matrix BlockSpectrum::exponential(double t) const { return spectral_exponential(eigenvalues, eigenvectors, t); }

BlockSpectrum block_spectrum(const Operator& z, const SelectiveBlock& block) {
  const auto idx = as_index(block.state_indices);
  Matrix sub = z.matrix()(idx, idx);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
  if (solver.info() != Eigen::Success) throw InvariantError("eigensolver", "block eigensolver did not converge");
  return BlockSpectrum{block, solver.eigenvalues(), solver.eigenvectors()};
}

ZeroQuantumPropagator::ZeroQuantumPropagator(const Operator& z) : system_(z.system()) {
  require_hermitian(z, "zero-quantum generator");
  require_zero_quantum(z, "zero-quantum generator");
  for (const SelectiveBlock& block : selective_blocks(system_)) blocks_.push_back(block_spectrum(z, block));
}

Operator ZeroQuantumPropagator::at(double t) const {
  const auto dim = static_cast<Eigen::Index>(system_.dim());
  Matrix u = Matrix::Zero(dim, dim);
  for (const BlockSpectrum& b : blocks_) {
    const auto idx = as_index(b.block.state_indices);
    u(idx, idx) = b.exponential(t);
  }
  return Operator(system_, std::move(u));
}

Operator ZeroQuantumPropagator::evolve(const Operator& q, double t) const {
  require_zero_quantum(q, "evolved operator");
  const auto dim = static_cast<Eigen::Index>(system_.dim());
  Matrix out = Matrix::Zero(dim, dim);
  for (const BlockSpectrum& b : blocks_) {
    const auto idx = as_index(b.block.state_indices);
    const Matrix u = b.exponential(t);
    out(idx, idx) = u * q.matrix()(idx, idx) * u.adjoint();
  }
  return Operator::classify(system_, std::move(out));
}

Operator zq_propagator(const Operator& z, double t) { return ZeroQuantumPropagator(z).at(t); }

Operator conjugate(const Operator& u, const Operator& q) {
  require_same_system(u, q);
  Matrix out = u.matrix() * q.matrix() * u.matrix().adjoint();
  if (q.hermitian_hint() == Hermiticity::Yes) return Operator::classify(q.system(), std::move(out));
  return Operator(q.system(), std::move(out));
}

double off_block_residual(const Operator& q, int k) {
  const std::size_t dim = q.dim();
  double sq = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    const bool col_in = SpinSystem::down_count(c) == k;
    for (std::size_t r = 0; r < dim; ++r) {
      if (!(col_in && SpinSystem::down_count(r) == k)) sq += std::norm(q(r, c));
    }
  }
  return std::sqrt(sq);
}

BlockEvolver::BlockEvolver(const Operator& z, int k) : system_(z.system()) {
  if (k < 0 || k > system_.spins()) {
    throw ConfigError("block_index", "block index " + std::to_string(k) + " outside [0, " +
                                         std::to_string(system_.spins()) + "]");
  }
  require_hermitian(z, "zero-quantum generator");
  require_zero_quantum(z, "zero-quantum generator");
  spectrum_ = block_spectrum(z, selective_blocks(system_)[static_cast<std::size_t>(k)]);
}

Matrix BlockEvolver::evolve_block(const Matrix& q_block, double t) const {
  const Matrix u = spectrum_.exponential(t);
  return u * q_block * u.adjoint();
}

Operator BlockEvolver::evolve(const Operator& q_k, double t) const {
  const double leak = off_block_residual(q_k, spectrum_.block.k);
  if (leak > 1e-12 * q_k.frobenius_norm()) {
    std::ostringstream msg;
    msg << "operator has support outside block k = " << spectrum_.block.k << ": residual " << leak;
    throw NumericalError("off_block_support", msg.str(), leak);
  }
  const auto idx = as_index(spectrum_.block.state_indices);
  const auto dim = static_cast<Eigen::Index>(system_.dim());
  Matrix out = Matrix::Zero(dim, dim);
  out(idx, idx) = evolve_block(q_k.matrix()(idx, idx), t);
  if (q_k.hermitian_hint() == Hermiticity::Yes) return Operator::classify(system_, std::move(out));
  return Operator(system_, std::move(out));
}

Operator blockwise_conjugate(const Operator& z, const Operator& q_k, int k, double t) {
  return BlockEvolver(z, k).evolve(q_k, t);
}

}  // namespace mqspace
