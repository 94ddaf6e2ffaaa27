#include <algorithm>
#include <map>
#include <numeric>
#include <numbers>

#include "gtest/gtest.h"

#include "mqspace/base_operator.hpp"
#include "mqspace/coherence.hpp"
#include "mqspace/encodings.hpp"
#include "mqspace/error.hpp"
#include "mqspace/random.hpp"
#include "oracles/brute_force.hpp"

using namespace mqspace;

namespace {

// Bucket oracle: walk magnetizations from high to low, indices ascending within each.
std::vector<std::size_t> bucket_order(int n) {
  std::vector<std::size_t> out;
  for (int down = 0; down <= n; ++down)
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i)
      if (oracle::popcount(i) == down) out.push_back(i);
  return out;
}

Matrix product_of_swaps(const std::vector<SwapGenerator>& swaps, const SpinSystem& sys) {
  Matrix p = Matrix::Identity(sys.dim(), sys.dim());
  for (const auto& s : swaps) p = p * oracle::expm(s.generator(sys).matrix(), s.angle);
  return p;
}

}  // namespace

TEST(iz_sorted_encoding, examples) {
  EXPECT_EQ(iz_sorted_encoding(SpinSystem(2)).permutation(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(iz_sorted_encoding(SpinSystem(3)).permutation(), (std::vector<std::size_t>{0, 1, 2, 4, 3, 5, 6, 7}));
  for (int n = 1; n <= 12; ++n) {
    const auto perm = iz_sorted_encoding(SpinSystem(n)).permutation();
    EXPECT_EQ(perm.front(), 0U);
    EXPECT_EQ(perm.back(), (std::size_t{1} << n) - 1);
  }
}

TEST(iz_sorted_encoding, stable_and_non_increasing) {
  for (int n = 1; n <= 10; ++n) {
    const SpinSystem sys(n);
    const auto perm = iz_sorted_encoding(sys).permutation();
    EXPECT_EQ(perm, bucket_order(n)) << n;
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
      const int a = n - 2 * oracle::popcount(perm[i]);
      const int b = n - 2 * oracle::popcount(perm[i + 1]);
      EXPECT_GE(a, b);
      if (a == b) EXPECT_LT(perm[i], perm[i + 1]);
    }
  }
}

TEST(encoding, validation_and_inverse) {
  EXPECT_THROW(Encoding({0, 0, 1}), ConfigError);
  EXPECT_THROW(Encoding({0, 3, 1}), ConfigError);
  const Encoding enc({2, 0, 3, 1});
  EXPECT_EQ(enc.inverse(), (std::vector<std::size_t>{1, 3, 0, 2}));
  EXPECT_EQ(enc.inverted().permutation(), enc.inverse());
  EXPECT_TRUE(Encoding::identity(5).cycles().empty());
}

TEST(permutation_matrix, examples) {
  const SpinSystem sys(3);
  EXPECT_EQ((permutation_matrix(Encoding::identity(8), sys).matrix() - Matrix::Identity(8, 8)).norm(), 0.0);
  Matrix swap = Matrix::Identity(8, 8);
  swap.row(3).swap(swap.row(4));
  const Operator p = permutation_matrix(iz_sorted_encoding(sys), sys);
  EXPECT_EQ((p.matrix() - swap).norm(), 0.0);
  EXPECT_EQ((p.matrix() * p.matrix().adjoint() - Matrix::Identity(8, 8)).norm(), 0.0);
  EXPECT_THROW(permutation_matrix(Encoding::identity(4), sys), ConfigError);
}

TEST(permutation_matrix, maps_computational_state_to_its_position) {
  Rng rng(3);
  const SpinSystem sys(4);
  std::vector<std::size_t> perm(16);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Encoding enc(perm);
  const Matrix p = permutation_matrix(enc, sys).matrix();
  for (std::size_t j = 0; j < 16; ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(16);
    e(static_cast<Eigen::Index>(j)) = 1.0;
    const Eigen::VectorXcd image = p * e;
    EXPECT_EQ(image(static_cast<Eigen::Index>(enc.inverse()[j])), Complex(1.0));
    EXPECT_EQ(image.cwiseAbs().sum(), 1.0);
  }
}

TEST(synthesize_permutation, examples) {
  const SpinSystem sys(3);
  EXPECT_TRUE(synthesize_permutation(Encoding::identity(8)).empty());

  const auto swaps = synthesize_permutation(iz_sorted_encoding(sys));
  ASSERT_EQ(swaps.size(), 1U);
  EXPECT_EQ(std::min(swaps[0].i, swaps[0].j), 3U);
  EXPECT_EQ(std::max(swaps[0].i, swaps[0].j), 4U);
  EXPECT_DOUBLE_EQ(swaps[0].angle, std::numbers::pi);
  const Matrix g = swaps[0].generator(sys).matrix();
  EXPECT_LE((g - g.adjoint()).norm(), 0.0);
  EXPECT_LE((g * g - g).norm(), 1e-15);
  const Matrix exact = permutation_matrix(iz_sorted_encoding(sys), sys).matrix();
  EXPECT_LE((oracle::expm(g, std::numbers::pi) - exact).norm(), 1e-12);
  EXPECT_LE((swaps[0].unitary(sys).matrix() - exact).norm(), 1e-15);
}

TEST(synthesize_permutation, random_permutations_match_product_oracle) {
  Rng rng(17);
  const SpinSystem sys(4);
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<std::size_t> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Encoding enc(perm);
    const auto swaps = synthesize_permutation(enc);
    EXPECT_LE(swaps.size(), 15U);
    std::size_t moved = 0;
    for (const auto& c : enc.cycles()) moved += c.size() - 1;
    EXPECT_EQ(swaps.size(), moved);
    const Matrix target = permutation_matrix(enc, sys).matrix();
    EXPECT_LE((product_of_swaps(swaps, sys) - target).norm(), 1e-12);
    Matrix closed = Matrix::Identity(16, 16);
    for (const auto& s : swaps) closed = closed * s.unitary(sys).matrix();
    EXPECT_LE((closed - target).norm(), 1e-12);
  }
}

TEST(synthesize_permutation, sorted_encoding_up_to_twelve_spins) {
  for (int n = 1; n <= 12; ++n) {
    const SpinSystem sys(n);
    const Encoding enc = iz_sorted_encoding(sys);
    const auto swaps = synthesize_permutation(enc);
    // Apply the reflections to the basis labels: each 1 - 2G swaps two entries exactly.
    std::vector<std::size_t> rows(sys.dim());
    std::iota(rows.begin(), rows.end(), 0);
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) std::swap(rows[it->i], rows[it->j]);
    for (std::size_t i = 0; i < sys.dim(); ++i) EXPECT_EQ(rows[i], enc.permutation()[i]) << "n = " << n;
    if (n <= 6) {
      Matrix closed = Matrix::Identity(sys.dim(), sys.dim());
      for (const auto& s : swaps) closed = closed * s.unitary(sys).matrix();
      EXPECT_LE((closed - permutation_matrix(enc, sys).matrix()).norm(), 1e-12);
    }
  }
}

TEST(reencode, examples) {
  for (int n = 1; n <= 12; ++n) {
    const SpinSystem sys(n);
    const Operator sorted = reencode(total_z(sys), iz_sorted_encoding(sys));
    const Eigen::VectorXd diag = sorted.matrix().diagonal().real();
    EXPECT_EQ((sorted.matrix() - Matrix(sorted.matrix().diagonal().asDiagonal())).norm(), 0.0);
    for (Eigen::Index i = 0; i + 1 < diag.size(); ++i) EXPECT_GE(diag(i), diag(i + 1)) << "n = " << n;
  }
  Rng rng(5);
  const SpinSystem sys(4);
  const Operator q = random_operator(sys, rng);
  EXPECT_EQ((reencode(q, Encoding::identity(16)).matrix() - q.matrix()).norm(), 0.0);
  const Encoding enc = iz_sorted_encoding(sys);
  EXPECT_EQ((reencode(reencode(q, enc), enc.inverted()).matrix() - q.matrix()).norm(), 0.0);
  const Matrix p = permutation_matrix(enc, sys).matrix();
  EXPECT_EQ((reencode(q, enc).matrix() - p * q.matrix() * p.adjoint()).norm(), 0.0);
  EXPECT_THROW(reencode(q, Encoding::identity(8)), ConfigError);
}

TEST(reencode, preserves_row_and_column_popcount_census) {
  Rng rng(9);
  for (int n = 1; n <= 6; ++n) {
    const SpinSystem sys(n);
    const Encoding enc = iz_sorted_encoding(sys);
    const Operator q = random_operator(sys, rng);
    const Operator r = reencode(q, enc);
    // Position a carries computational state perm[a], so orders are read through the encoding.
    std::map<int, double> before, after;
    for (std::size_t a = 0; a < sys.dim(); ++a)
      for (std::size_t b = 0; b < sys.dim(); ++b) {
        before[oracle::popcount(b) - oracle::popcount(a)] += std::norm(q(a, b));
        const std::size_t pa = enc.permutation()[a], pb = enc.permutation()[b];
        after[oracle::popcount(pb) - oracle::popcount(pa)] += std::norm(r(a, b));
      }
    for (const auto& [p, w] : before) EXPECT_NEAR(after[p], w, 1e-10 * w) << p;
  }
}
