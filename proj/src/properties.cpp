#include "mqspace/properties.hpp"

#include <cmath>

#include "mqspace/base_operator.hpp"
#include "mqspace/coherence.hpp"
#include "mqspace/random.hpp"

namespace mqspace {

namespace {

constexpr double kOrderTolerance = 1e-10;
constexpr double kExtremeTolerance = 1e-12;

}  // namespace

OrderPreservationReport verify_order_preservation(const SpinSystem& system, std::size_t trials,
                                                  std::uint64_t seed) {
  OrderPreservationReport report;
  report.spins = system.spins();
  report.trials = trials;
  Rng rng(seed);
  const std::size_t dim = system.dim();
  const auto d = static_cast<Eigen::Index>(dim);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Operator z = project(random_operator(system, rng), SubspaceTag::ZeroQuantum);
    const double bound = kOrderTolerance * z.frobenius_norm();
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        const int p = coherence_order_of_element(system, r, c);
        const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
        // Q = |r><c|: Z Q places column r of Z at column c; Q Z places row c of Z at row r.
        Matrix left = Matrix::Zero(d, d);
        left.col(ci) = z.matrix().col(ri);
        Matrix right = Matrix::Zero(d, d);
        right.row(ri) = z.matrix().row(ci);
        const Operator lo(system, left);
        const Operator ro(system, right);
        const Operator co(system, left - right);
        const double rl = off_order_residual(lo, p);
        const double rr = off_order_residual(ro, p);
        const double rc = off_order_residual(co, p);
        report.max_left = std::max(report.max_left, rl);
        report.max_right = std::max(report.max_right, rr);
        report.max_commutator = std::max(report.max_commutator, rc);
        report.checks += 3;
        if (rl > bound || rr > bound || rc > bound) {
          const std::string label = matrix_unit_spec(system, r, c).label();
          if (rl > bound) report.violations.push_back({trial, label, "left", rl});
          if (rr > bound) report.violations.push_back({trial, label, "right", rr});
          if (rc > bound) report.violations.push_back({trial, label, "commutator", rc});
        }
      }
    }
  }
  return report;
}

ExtremeStatesReport verify_extreme_states(const SpinSystem& system, std::size_t random_trials, std::uint64_t seed) {
  ExtremeStatesReport report;
  report.spins = system.spins();
  const std::size_t dim = system.dim();
  const auto d = static_cast<Eigen::Index>(dim);
  const Vector all_up = Vector::Unit(d, 0);
  const Vector all_down = Vector::Unit(d, d - 1);

  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (r == c || SpinSystem::down_count(r) != SpinSystem::down_count(c)) continue;
      const BaseOperatorSpec spec = matrix_unit_spec(system, r, c);
      const Operator z = build_operator(system, spec);
      const double residual = std::max((z.matrix() * all_up).norm(), (z.matrix() * all_down).norm());
      report.max_residual = std::max(report.max_residual, residual);
      ++report.basis_checked;
      if (residual != 0.0) report.violations.push_back({spec.label(), residual});
    }
  }

  Rng rng(seed);
  for (std::size_t trial = 0; trial < random_trials; ++trial) {
    const Operator z = random_zqc(system, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(z.matrix());
    const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
    // Weight of each extreme state inside the numerically-zero eigenspace.
    double up_weight = 0.0, down_weight = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(solver.eigenvalues()(j)) > 1e-10 * scale) continue;
      up_weight += std::norm(solver.eigenvectors()(0, j));
      down_weight += std::norm(solver.eigenvectors()(d - 1, j));
    }
    const double exact = std::max((z.matrix() * all_up).norm(), (z.matrix() * all_down).norm());
    const double residual = std::max({std::abs(1.0 - up_weight), std::abs(1.0 - down_weight), exact});
    report.max_residual = std::max(report.max_residual, residual);
    ++report.random_checked;
    if (residual > kExtremeTolerance) report.violations.push_back({"random#" + std::to_string(trial), residual});
  }
  return report;
}

}  // namespace mqspace
