#include "mqspace/encodings.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "mqspace/error.hpp"

namespace mqspace {

Encoding::Encoding(std::vector<std::size_t> permutation)
    : permutation_(std::move(permutation)), inverse_(permutation_.size(), permutation_.size()) {
  for (std::size_t pos = 0; pos < permutation_.size(); ++pos) {
    const std::size_t j = permutation_[pos];
    if (j >= permutation_.size() || inverse_[j] != permutation_.size()) {
      throw ConfigError("bad_permutation", "encoding is not a bijection at position " + std::to_string(pos));
    }
    inverse_[j] = pos;
  }
}

Encoding Encoding::identity(std::size_t size) {
  std::vector<std::size_t> p(size);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return Encoding(std::move(p));
}

std::vector<std::vector<std::size_t>> Encoding::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size(), false);
  for (std::size_t start = 0; start < size(); ++start) {
    if (seen[start] || inverse_[start] == start) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t j = start; !seen[j]; j = inverse_[j]) {
      seen[j] = true;
      cycle.push_back(j);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Encoding iz_sorted_encoding(const SpinSystem& system) {
  std::vector<std::size_t> p(system.dim());
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::stable_sort(p.begin(), p.end(), [](std::size_t a, std::size_t b) {
    return SpinSystem::down_count(a) < SpinSystem::down_count(b);
  });
  return Encoding(std::move(p));
}

Operator permutation_matrix(const Encoding& enc, const SpinSystem& system) {
  if (enc.size() != system.dim()) {
    throw ConfigError("dimension_mismatch", "encoding of length " + std::to_string(enc.size()) +
                                                " used with dimension " + std::to_string(system.dim()));
  }
  const auto d = static_cast<Eigen::Index>(system.dim());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < enc.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(enc.permutation()[i])) = 1.0;
  }
  return Operator(system, std::move(m));
}

Operator SwapGenerator::generator(const SpinSystem& system) const {
  const auto d = static_cast<Eigen::Index>(system.dim());
  Matrix g = Matrix::Zero(d, d);
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  g(a, a) = 0.5;
  g(b, b) = 0.5;
  g(a, b) = -0.5;
  g(b, a) = -0.5;
  return Operator(system, std::move(g), Hermiticity::Yes);
}

Operator SwapGenerator::unitary(const SpinSystem& system) const {
  const auto d = static_cast<Eigen::Index>(system.dim());
  Matrix u = Matrix::Identity(d, d);
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  u(a, a) = 0.0;
  u(b, b) = 0.0;
  u(a, b) = 1.0;
  u(b, a) = 1.0;
  return Operator(system, std::move(u), Hermiticity::Yes);
}

std::vector<SwapGenerator> synthesize_permutation(const Encoding& enc) {
  std::vector<SwapGenerator> out;
  for (const auto& cycle : enc.cycles()) {
    for (std::size_t t = cycle.size() - 1; t >= 1; --t) {
      out.push_back(SwapGenerator{cycle.front(), cycle[t], std::numbers::pi});
    }
  }
  return out;
}

Operator reencode(const Operator& q, const Encoding& enc) {
  if (enc.size() != q.dim()) {
    throw ConfigError("dimension_mismatch", "encoding of length " + std::to_string(enc.size()) +
                                                " applied to dimension " + std::to_string(q.dim()));
  }
  const std::vector<Eigen::Index> idx(enc.permutation().begin(), enc.permutation().end());
  return Operator(q.system(), q.matrix()(idx, idx), q.hermitian_hint());
}

}  // namespace mqspace
