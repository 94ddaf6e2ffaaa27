#include "mqspace/operator.hpp"

#include <sstream>

#include "mqspace/error.hpp"

namespace mqspace {

namespace {

constexpr double kHintTolerance = 1e-12;

double max_asymmetry(const Matrix& m) {
  double worst = 0.0;
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c; r < n; ++r) {
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return worst;
}

}  // namespace

Operator::Operator(SpinSystem system, Matrix entries, Hermiticity hint)
    : system_(system), entries_(std::move(entries)), hint_(hint) {
  const auto dim = static_cast<Eigen::Index>(system_.dim());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    std::ostringstream msg;
    msg << "operator matrix is " << entries_.rows() << "x" << entries_.cols() << ", expected "
        << dim << "x" << dim;
    throw ConfigError("dimension_mismatch", msg.str());
  }
  if (hint_ == Hermiticity::Yes) {
    const double asym = max_asymmetry(entries_);
    if (asym > kHintTolerance * entries_.norm()) {
      std::ostringstream msg;
      msg << "operator flagged Hermitian has asymmetry " << asym;
      throw InvariantError("hermitian_hint", msg.str());
    }
  }
}

Operator Operator::zero(const SpinSystem& system) {
  const auto dim = static_cast<Eigen::Index>(system.dim());
  return Operator(system, Matrix::Zero(dim, dim), Hermiticity::Yes);
}

Operator Operator::identity(const SpinSystem& system) {
  const auto dim = static_cast<Eigen::Index>(system.dim());
  return Operator(system, Matrix::Identity(dim, dim), Hermiticity::Yes);
}

Operator Operator::classify(SpinSystem system, Matrix entries) {
  const bool herm = max_asymmetry(entries) <= kHintTolerance * entries.norm();
  return Operator(system, std::move(entries), herm ? Hermiticity::Yes : Hermiticity::Unknown);
}

double Operator::asymmetry() const { return max_asymmetry(entries_); }

Operator Operator::adjoint() const {
  return Operator(system_, entries_.adjoint(), hint_);
}

void require_same_system(const Operator& a, const Operator& b) {
  if (!(a.system() == b.system())) {
    throw ConfigError("dimension_mismatch",
                      "operators belong to systems with " + std::to_string(a.system().spins()) +
                          " and " + std::to_string(b.system().spins()) + " spins");
  }
}

Complex hs_inner(const Operator& a, const Operator& b) {
  require_same_system(a, b);
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.matrix().array().conjugate() * b.matrix().array()).sum();
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.hermitian_hint() == Hermiticity::Yes) return true;
  if (op.hermitian_hint() == Hermiticity::No) return false;
  return op.asymmetry() <= tol * op.frobenius_norm();
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_system(a, b);
  const bool herm = a.hermitian_hint() == Hermiticity::Yes && b.hermitian_hint() == Hermiticity::Yes;
  Matrix sum = a.matrix() + b.matrix();
  return herm ? Operator::classify(a.system(), std::move(sum)) : Operator(a.system(), std::move(sum));
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_system(a, b);
  const bool herm = a.hermitian_hint() == Hermiticity::Yes && b.hermitian_hint() == Hermiticity::Yes;
  Matrix diff = a.matrix() - b.matrix();
  return herm ? Operator::classify(a.system(), std::move(diff)) : Operator(a.system(), std::move(diff));
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_system(a, b);
  return Operator(a.system(), a.matrix() * b.matrix());
}

Operator operator*(Complex scale, const Operator& a) {
  return Operator(a.system(), scale * a.matrix());
}

Operator operator*(double scale, const Operator& a) {
  return Operator(a.system(), scale * a.matrix(), a.hermitian_hint());
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_system(a, b);
  return Operator(a.system(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator total_z(const SpinSystem& system) {
  const auto dim = system.dim();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 0.5 * system.twice_magnetization(i);
  }
  return Operator(system, std::move(m), Hermiticity::Yes);
}

}  // namespace mqspace
