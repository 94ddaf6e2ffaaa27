#include "mqspace/coherence.hpp"

#include <cmath>
#include <string>

#include "mqspace/error.hpp"

namespace mqspace {

int coherence_order_of_element(const SpinSystem& system, std::size_t row, std::size_t col) {
  if (row >= system.dim() || col >= system.dim()) {
    throw ConfigError("index_range", "element (" + std::to_string(row) + ", " + std::to_string(col) +
                                         ") outside a " + std::to_string(system.dim()) + "-dimensional space");
  }
  return SpinSystem::down_count(col) - SpinSystem::down_count(row);
}

std::map<int, Operator> order_components(const Operator& q) {
  const SpinSystem& sys = q.system();
  const std::size_t dim = sys.dim();
  const auto d = static_cast<Eigen::Index>(dim);
  std::map<int, Matrix> parts;
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex v = q(r, c);
      if (v == Complex{}) continue;
      const int p = SpinSystem::down_count(c) - SpinSystem::down_count(r);
      auto [it, inserted] = parts.try_emplace(p);
      if (inserted) it->second = Matrix::Zero(d, d);
      it->second(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  std::map<int, Operator> out;
  for (auto& [p, m] : parts) out.emplace(p, Operator(sys, std::move(m)));
  return out;
}

double off_order_residual(const Operator& q, int p) {
  const std::size_t dim = q.dim();
  double sq = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      if (SpinSystem::down_count(c) - SpinSystem::down_count(r) != p) sq += std::norm(q(r, c));
    }
  }
  return std::sqrt(sq);
}

}  // namespace mqspace
