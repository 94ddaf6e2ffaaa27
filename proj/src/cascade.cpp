#include "mqspace/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mqspace/error.hpp"
#include "mqspace/propagator.hpp"

namespace mqspace {

namespace {

constexpr double kDegeneracyGap = 1e-10;
constexpr double kSingularPolar = 1e-6;

Partition group_by(const SpinSystem& system, int cells, int (*key)(std::size_t)) {
  Partition p(static_cast<std::size_t>(cells));
  for (std::size_t i = 0; i < system.dim(); ++i) p[static_cast<std::size_t>(key(i))].push_back(i);
  return p;
}

Partition coarse_partition(const SpinSystem& system, SubspaceTag constraint) {
  switch (constraint) {
    case SubspaceTag::Full: {
      Partition p(1);
      p[0].resize(system.dim());
      std::iota(p[0].begin(), p[0].end(), std::size_t{0});
      return p;
    }
    case SubspaceTag::EvenMQ: return parity_partition(system);
    case SubspaceTag::ZeroQuantum: return popcount_partition(system);
    case SubspaceTag::LOMSO: return singleton_partition(system);
  }
  return {};
}

std::vector<std::size_t> cell_of(const Partition& partition, std::size_t dim) {
  std::vector<std::size_t> owner(dim, dim);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    for (std::size_t i : partition[c]) {
      if (i >= dim || owner[i] != dim) {
        throw ConfigError("bad_partition", "target cells must partition 0.." + std::to_string(dim - 1));
      }
      owner[i] = c;
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (owner[i] == dim) throw ConfigError("bad_partition", "index " + std::to_string(i) + " is in no cell");
  }
  return owner;
}

// Rotates a degenerate cluster's basis so that each new vector has the largest
// possible weight on a single cell. `cells` holds local row indices.
void align_cluster(Matrix& vectors, Eigen::Index first, Eigen::Index count,
                   const std::vector<std::vector<Eigen::Index>>& cells) {
  Matrix remaining = vectors.middleCols(first, count);
  Matrix picked(vectors.rows(), count);
  for (Eigen::Index step = 0; step < count; ++step) {
    double best = -1.0;
    Matrix best_vectors;
    for (const auto& cell : cells) {
      if (cell.empty()) continue;
      const Matrix rows = remaining(cell, Eigen::all);
      Eigen::SelfAdjointEigenSolver<Matrix> solver(rows.adjoint() * rows);
      const double top = solver.eigenvalues()(solver.eigenvalues().size() - 1);
      if (top > best + 1e-14) {
        best = top;
        best_vectors = solver.eigenvectors();
      }
    }
    const Eigen::Index r = best_vectors.cols();
    picked.col(step) = remaining * best_vectors.col(r - 1);
    remaining = (remaining * best_vectors.leftCols(r - 1)).eval();
  }
  vectors.middleCols(first, count) = picked;
}

struct BlockRotation {
  Matrix unitary;
  bool fallback;
};

BlockRotation rotate_block(const Matrix& h, const std::vector<std::vector<Eigen::Index>>& cells) {
  const Eigen::Index m = h.rows();
  std::vector<std::size_t> local_cell(static_cast<std::size_t>(m));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (Eigen::Index i : cells[c]) local_cell[static_cast<std::size_t>(i)] = c;
  }

  bool aligned = true;
  for (Eigen::Index c = 0; c < m && aligned; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) {
      if (local_cell[static_cast<std::size_t>(r)] != local_cell[static_cast<std::size_t>(c)] && h(r, c) != Complex{}) {
        aligned = false;
        break;
      }
    }
  }
  if (aligned) return {Matrix::Identity(m, m), false};

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw InvariantError("eigensolver", "Hermitian eigensolver did not converge");
  const Eigen::VectorXd values = solver.eigenvalues();
  Matrix vectors = solver.eigenvectors();

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index start = 0; start < m;) {
    Eigen::Index end = start + 1;
    while (end < m && values(end) - values(end - 1) < kDegeneracyGap * scale) ++end;
    if (end - start > 1) align_cluster(vectors, start, end - start, cells);
    start = end;
  }

  // Greedy assignment: descending overlap, then ascending eigenvalue, then
  // ascending eigenvector index, then ascending cell.
  struct Candidate {
    double overlap;
    Eigen::Index vector;
    std::size_t cell;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(m) * cells.size());
  for (Eigen::Index j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double w = 0.0;
      for (Eigen::Index i : cells[c]) w += std::norm(vectors(i, j));
      candidates.push_back({w, j, c});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (values(a.vector) != values(b.vector)) return values(a.vector) < values(b.vector);
    if (a.vector != b.vector) return a.vector < b.vector;
    return a.cell < b.cell;
  });
  std::vector<std::size_t> capacity(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) capacity[c] = cells[c].size();
  std::vector<std::vector<Eigen::Index>> assigned(cells.size());
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  for (const Candidate& cand : candidates) {
    if (taken[static_cast<std::size_t>(cand.vector)] || capacity[cand.cell] == 0) continue;
    taken[static_cast<std::size_t>(cand.vector)] = true;
    --capacity[cand.cell];
    assigned[cand.cell].push_back(cand.vector);
  }

  // X = sum_cells P_cell Q_cell; row i of X is row i of Q_{cell(i)}.
  Matrix x(m, m);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].empty()) continue;
    std::sort(assigned[c].begin(), assigned[c].end());
    const Matrix w = vectors(Eigen::all, assigned[c]);
    const Matrix rows = w(cells[c], Eigen::all) * w.adjoint();
    for (std::size_t t = 0; t < cells[c].size(); ++t) x.row(cells[c][t]) = rows.row(static_cast<Eigen::Index>(t));
  }
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() >= kSingularPolar) {
    return {svd.matrixU() * svd.matrixV().adjoint(), false};
  }

  // Map each assigned eigenvector straight onto a cell basis state.
  Matrix v = Matrix::Zero(m, m);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t t = 0; t < cells[c].size(); ++t) {
      v.row(cells[c][t]) = vectors.col(assigned[c][t]).adjoint();
    }
  }
  return {v, true};
}

}  // namespace

Partition parity_partition(const SpinSystem& system) {
  return group_by(system, 2, [](std::size_t i) { return SpinSystem::down_count(i) & 1; });
}

Partition popcount_partition(const SpinSystem& system) {
  return group_by(system, system.spins() + 1, [](std::size_t i) { return SpinSystem::down_count(i); });
}

Partition singleton_partition(const SpinSystem& system) {
  Partition p(system.dim());
  for (std::size_t i = 0; i < system.dim(); ++i) p[i] = {i};
  return p;
}

double off_partition_residual(const Operator& h, const Partition& partition) {
  const std::vector<std::size_t> owner = cell_of(partition, h.dim());
  double sq = 0.0;
  for (std::size_t c = 0; c < h.dim(); ++c) {
    for (std::size_t r = 0; r < h.dim(); ++r) {
      if (owner[r] != owner[c]) sq += std::norm(h(r, c));
    }
  }
  return std::sqrt(sq);
}

StageResult stage_reduce(const Operator& h, const Partition& target, SubspaceTag constraint) {
  require_hermitian(h, "stage generator");
  const SpinSystem& sys = h.system();
  const std::size_t dim = sys.dim();
  const std::vector<std::size_t> target_owner = cell_of(target, dim);
  const Partition coarse = coarse_partition(sys, constraint);
  const std::vector<std::size_t> coarse_owner = cell_of(coarse, dim);

  std::vector<std::vector<std::size_t>> cells_in_block(coarse.size());
  for (std::size_t c = 0; c < target.size(); ++c) {
    if (target[c].empty()) continue;
    const std::size_t block = coarse_owner[target[c].front()];
    for (std::size_t i : target[c]) {
      if (coarse_owner[i] != block) {
        throw ConfigError("bad_partition", "target cell " + std::to_string(c) + " straddles blocks of the " +
                                               to_string(constraint) + " constraint");
      }
    }
    cells_in_block[block].push_back(c);
  }

  const double coarse_residual = off_partition_residual(h, coarse);
  if (coarse_residual > kStageTolerance * h.frobenius_norm()) {
    std::ostringstream msg;
    msg << "generator is not block-diagonal over the " << to_string(constraint)
        << " pattern: residual " << coarse_residual;
    throw NumericalError("constraint_infeasible", msg.str(), coarse_residual);
  }

  const auto d = static_cast<Eigen::Index>(dim);
  Matrix v = Matrix::Zero(d, d);
  bool fallback = false;
  for (std::size_t b = 0; b < coarse.size(); ++b) {
    const std::vector<Eigen::Index> idx(coarse[b].begin(), coarse[b].end());
    std::vector<Eigen::Index> local(dim, -1);
    for (std::size_t t = 0; t < idx.size(); ++t) local[static_cast<std::size_t>(idx[t])] = static_cast<Eigen::Index>(t);
    std::vector<std::vector<Eigen::Index>> cells;
    for (std::size_t c : cells_in_block[b]) {
      std::vector<Eigen::Index> cell;
      for (std::size_t i : target[c]) cell.push_back(local[i]);
      std::sort(cell.begin(), cell.end());
      cells.push_back(std::move(cell));
    }
    const BlockRotation rot = rotate_block(h.matrix()(idx, idx), cells);
    v(idx, idx) = rot.unitary;
    fallback = fallback || rot.fallback;
  }

  Operator unitary(sys, std::move(v));
  Operator reduced = Operator::classify(sys, unitary.matrix() * h.matrix() * unitary.matrix().adjoint());
  const double residual = off_partition_residual(reduced, target);
  return StageResult{std::move(unitary), std::move(reduced), residual, fallback};
}

bool CascadeResult::passed() const {
  return stage_members[0] && stage_members[1] && stage_members[2] && v2_even_mq.member &&
         v3_zero_quantum.member && spectrum_preserved;
}

CascadeResult cascade(const Operator& h) {
  require_hermitian(h, "cascade generator");
  const SpinSystem& sys = h.system();
  StageResult s1 = stage_reduce(h, parity_partition(sys), SubspaceTag::Full);
  StageResult s2 = stage_reduce(s1.reduced, popcount_partition(sys), SubspaceTag::EvenMQ);
  StageResult s3 = stage_reduce(s2.reduced, singleton_partition(sys), SubspaceTag::ZeroQuantum);

  const Membership m1 = is_member(s1.reduced, SubspaceTag::EvenMQ, kStageTolerance);
  const Membership m2 = is_member(s2.reduced, SubspaceTag::ZeroQuantum, kStageTolerance);
  const Membership m3 = is_member(s3.reduced, SubspaceTag::LOMSO, kStageTolerance);
  const Membership v2 = is_member(s2.unitary, SubspaceTag::EvenMQ, kStageTolerance);
  const Membership v3 = is_member(s3.unitary, SubspaceTag::ZeroQuantum, kStageTolerance);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd expected = solver.eigenvalues();
  Eigen::VectorXd diagonal = s3.reduced.matrix().diagonal().real();
  std::sort(diagonal.begin(), diagonal.end());
  const double deviation = (expected - diagonal).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());

  return CascadeResult{{std::move(s1), std::move(s2), std::move(s3)},
                       {m1.residual, m2.residual, m3.residual},
                       {m1.member, m2.member, m3.member},
                       v2,
                       v3,
                       deviation,
                       deviation <= kStageTolerance * scale};
}

}  // namespace mqspace
