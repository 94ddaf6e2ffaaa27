#include "mqspace/random.hpp"

namespace mqspace {

Operator random_operator(const SpinSystem& system, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(system.dim());
  Matrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex{re, im};
    }
  }
  return Operator(system, std::move(m));
}

Operator random_hermitian(const SpinSystem& system, Rng& rng) {
  const Operator a = random_operator(system, rng);
  Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  // Force an exactly real diagonal and exact conjugate symmetry.
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    h(c, c) = h(c, c).real();
    for (Eigen::Index r = c + 1; r < h.rows(); ++r) h(c, r) = std::conj(h(r, c));
  }
  return Operator(system, std::move(h), Hermiticity::Yes);
}

Operator random_member(const SpinSystem& system, SubspaceTag tag, Rng& rng) {
  return project(random_hermitian(system, rng), tag);
}

Operator random_zqc(const SpinSystem& system, Rng& rng) {
  Matrix m = random_member(system, SubspaceTag::ZeroQuantum, rng).matrix();
  m.diagonal().setZero();
  return Operator(system, std::move(m), Hermiticity::Yes);
}

Operator random_block_operator(const SpinSystem& system, int k, Rng& rng) {
  Matrix m = random_hermitian(system, rng).matrix();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (SpinSystem::down_count(static_cast<std::size_t>(r)) != k ||
          SpinSystem::down_count(static_cast<std::size_t>(c)) != k) {
        m(r, c) = 0.0;
      }
    }
  }
  return Operator(system, std::move(m), Hermiticity::Yes);
}

}  // namespace mqspace
