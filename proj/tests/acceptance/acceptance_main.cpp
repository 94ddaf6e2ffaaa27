// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mqspace/mqspace.hpp"
#include "oracles/brute_force.hpp"

using namespace mqspace;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

Operator random_traceless_zq(const SpinSystem& sys, Rng& rng) {
  const Operator q = random_member(sys, SubspaceTag::ZeroQuantum, rng);
  const double shift = q.trace().real() / static_cast<double>(sys.dim());
  return Operator(sys, q.matrix() - shift * Matrix::Identity(sys.dim(), sys.dim()), Hermiticity::Yes);
}

Verdict dimension_tables() {
  Verdict v;
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t squares = 0;
    for (int k = 0; k <= n; ++k) {
      const std::uint64_t d = block_dimension(n, k);
      v.pass = v.pass && d == oracle::binomial_by_census(n, k);
      squares += d * d;
    }
    v.pass = v.pass && squares == oracle::binomial_by_census(2 * n, n) && squares == subspace_dims(n).zero_quantum;
  }
  v.detail = "d(k) = C(n,k) and sum d(k)^2 = C(2n,n) for n = 1..12";
  return v;
}

Verdict subspace_census() {
  Verdict v;
  std::uint64_t census[4] = {0, 0, 0, 0};
  bool nested = true;
  const SubspaceTag tags[4] = {SubspaceTag::LOMSO, SubspaceTag::ZeroQuantum, SubspaceTag::EvenMQ, SubspaceTag::Full};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const int pr = oracle::popcount(r), pc = oracle::popcount(c);
      const bool in[4] = {r == c, pr == pc, (pr - pc) % 2 == 0, true};
      for (int t = 0; t < 4; ++t) {
        census[t] += in[t] ? 1 : 0;
        nested = nested && in[t] == in_pattern(tags[t], r, c);
        if (t > 0) nested = nested && (!in[t - 1] || in[t]);
      }
    }
  }
  const SubspaceDims d = subspace_dims(2);
  v.pass = nested && census[0] == 4 && census[1] == 6 && census[2] == 8 && census[3] == 16 && d.lomso == 4 &&
           d.zero_quantum == 6 && d.even_mq == 8 && d.full == 16 && d.lomso < d.zero_quantum &&
           d.zero_quantum < d.even_mq && d.even_mq < d.full;
  v.detail = "n = 2 census LOMSO 4, ZQ 6, EvenMQ 8, Full 16, strictly nested";
  return v;
}

Verdict closure_suite() {
  Verdict v;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (SubspaceTag tag : {SubspaceTag::LOMSO, SubspaceTag::ZeroQuantum, SubspaceTag::EvenMQ}) {
      const ClosureReport r = verify_closure(tag, SpinSystem(n), 200, 1000 + static_cast<std::uint64_t>(n));
      v.pass = v.pass && r.passed() && r.trials == 200;
      worst = std::max(worst, r.max_relative_residual);
    }
  }
  v.detail = fmt("n <= 5, 200 trials per tag, max relative residual %.3g", worst);
  return v;
}

Verdict two_spin_isomorphism() {
  const Complex i{0.0, 1.0};
  const Matrix ax = oracle::on_spin(2, 1, 'x') * oracle::on_spin(2, 2, 'y') -
                    oracle::on_spin(2, 1, 'y') * oracle::on_spin(2, 2, 'x');
  const Matrix ay = oracle::on_spin(2, 1, 'x') * oracle::on_spin(2, 2, 'x') +
                    oracle::on_spin(2, 1, 'y') * oracle::on_spin(2, 2, 'y');
  const Matrix az = 0.5 * (oracle::on_spin(2, 1, 'z') - oracle::on_spin(2, 2, 'z'));
  const SpinSystem sys(2);
  const Operator x(sys, ax), y(sys, ay), z(sys, az);
  const double worst = std::max({(commutator(x, y).matrix() - i * az).cwiseAbs().maxCoeff(),
                                 (commutator(y, z).matrix() - i * ax).cwiseAbs().maxCoeff(),
                                 (commutator(z, x).matrix() - i * ay).cwiseAbs().maxCoeff()});
  return {worst <= 1e-12, fmt("[Ax,Ay] = iAz and cyclic, max elementwise residual %.3g", worst)};
}

Verdict propagation_machinery() {
  Verdict v;
  Rng rng(5);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  double prop_gap = 0.0, oracle_gap = 0.0, profile_residual = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const SpinSystem sys(n);
    for (int draw = 0; draw < 3; ++draw) {
      const Operator z = random_member(sys, SubspaceTag::ZeroQuantum, rng);
      const double t = time(rng);
      const Operator u = zq_propagator(z, t);
      v.pass = v.pass && is_member(u, SubspaceTag::ZeroQuantum).member;
      prop_gap = std::max(prop_gap, rel(u.matrix(), expm_hermitian(z, t).matrix()));
      oracle_gap = std::max(oracle_gap, rel(u.matrix(), oracle::expm(z.matrix(), t)));
      const Operator q = random_traceless_zq(sys, rng);
      const AmplitudeProfile p = amplitude_profile(z, q, t);
      profile_residual = std::max(profile_residual, p.residual / q.frobenius_norm());
    }
  }
  const double j = 1.7;
  HamiltonianSpec spec;
  spec.couplings = {{1, 2, j}};
  const SpinSystem two(2);
  const Operator h = build_hamiltonian(two, spec);
  const AmplitudeProfile transfer = amplitude_profile(h, single_spin_operator(two, 1, Factor::Z),
                                                      std::numbers::pi / j);
  const Matrix u = oracle::expm(0.5 * j * (oracle::kron("+-") + oracle::kron("-+")), std::numbers::pi / j);
  const Matrix rho = u * oracle::on_spin(2, 1, 'z') * u.adjoint();
  const double o1 = oracle::coefficient(oracle::cartesian("zE"), rho).real();
  const double o2 = oracle::coefficient(oracle::cartesian("Ez"), rho).real();
  const double a1 = transfer.amplitude("I1z")->real(), a2 = transfer.amplitude("I2z")->real();
  const double transfer_gap = std::max({std::abs(a1), std::abs(a2 - 1.0), std::abs(a1 - o1), std::abs(a2 - o2)});
  v.pass = v.pass && prop_gap <= 1e-10 && oracle_gap <= 1e-10 && profile_residual <= 1e-9 && transfer_gap <= 1e-10;
  v.detail = fmt("propagator gap %.3g (oracle %.3g), profile residual %.3g", prop_gap, oracle_gap, profile_residual) +
             fmt(", transfer gap %.3g", transfer_gap);
  return v;
}

Verdict block_confinement() {
  Verdict v;
  Rng rng(6);
  std::uniform_real_distribution<double> time(-2.0, 2.0);
  double gap = 0.0, leak = 0.0, rebuild = 0.0;
  for (int c = 0; c < 20; ++c) {
    const int n = 1 + c % 6;
    const SpinSystem sys(n);
    const Operator z = random_member(sys, SubspaceTag::ZeroQuantum, rng);
    Matrix sum = Matrix::Zero(sys.dim(), sys.dim());
    for (const BlockComponent& part : decompose_zq(z)) sum += part.component.matrix();
    rebuild = std::max(rebuild, (sum - z.matrix()).norm());
    const int k = c % (n + 1);
    const Operator q = random_block_operator(sys, k, rng);
    const double t = time(rng);
    const Operator blockwise = blockwise_conjugate(z, q, k, t);
    const Matrix u = oracle::expm(z.matrix(), t);
    gap = std::max(gap, rel(blockwise.matrix(), u * q.matrix() * u.adjoint()));
    leak = std::max(leak, off_block_residual(blockwise, k));
  }
  v.pass = rebuild == 0.0 && gap <= 1e-10 && leak == 0.0;
  v.detail = fmt("20 cases n <= 6: reconstruction %.3g, blockwise gap %.3g, leakage %.3g", rebuild, gap, leak);
  return v;
}

Verdict cascade_reduction() {
  Verdict v;
  Rng rng(7);
  const SpinSystem sys(4);
  double residual = 0.0, spectrum = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const Operator h = random_hermitian(sys, rng);
    const CascadeResult r = cascade(h);
    for (double s : r.residuals) residual = std::max(residual, s / std::max(1.0, h.frobenius_norm()));
    Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Matrix>(h.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
    Eigen::VectorXd diag = r.h(3).matrix().diagonal().real();
    std::sort(diag.begin(), diag.end());
    spectrum = std::max(spectrum, (eig - diag).cwiseAbs().maxCoeff());
    v.pass = v.pass && r.passed() && r.v2_even_mq.member && r.v3_zero_quantum.member;
  }
  v.pass = v.pass && residual <= 1e-8 && spectrum <= 1e-8;
  v.detail = fmt("20 generators at n = 4: max relative stage residual %.3g, spectrum deviation %.3g", residual,
                 spectrum);
  return v;
}

Verdict coherence_properties() {
  Verdict v;
  std::size_t violations = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto order = verify_order_preservation(SpinSystem(n), 100, 800 + static_cast<std::uint64_t>(n));
    const auto extreme = verify_extreme_states(SpinSystem(n), 100, 900 + static_cast<std::uint64_t>(n));
    violations += order.violations.size() + extreme.violations.size();
    v.pass = v.pass && order.passed() && extreme.passed() && order.trials == 100 && extreme.random_checked == 100;
  }
  v.detail = "order preservation and extreme states, n <= 5, 100 draws: " + std::to_string(violations) +
             " violations";
  return v;
}

Verdict encoding_permutation() {
  Verdict v;
  const SpinSystem three(3);
  const Encoding enc = iz_sorted_encoding(three);
  v.pass = enc.permutation() == std::vector<std::size_t>{0, 1, 2, 4, 3, 5, 6, 7};
  Matrix product = Matrix::Identity(8, 8);
  for (const auto& s : synthesize_permutation(enc)) product = product * oracle::expm(s.generator(three).matrix(), s.angle);
  double synth = (product - permutation_matrix(enc, three).matrix()).norm();
  for (int n = 4; n <= 6; ++n) {
    const SpinSystem sys(n);
    const Encoding e = iz_sorted_encoding(sys);
    Matrix p = Matrix::Identity(sys.dim(), sys.dim());
    for (const auto& s : synthesize_permutation(e)) p = p * s.unitary(sys).matrix();
    synth = std::max(synth, (p - permutation_matrix(e, sys).matrix()).norm());
  }
  for (int n = 1; n <= 12; ++n) {
    const SpinSystem sys(n);
    const Eigen::VectorXd diag = reencode(total_z(sys), iz_sorted_encoding(sys)).matrix().diagonal().real();
    for (Eigen::Index i = 0; i + 1 < diag.size(); ++i) v.pass = v.pass && diag(i) >= diag(i + 1);
  }
  v.pass = v.pass && synth <= 1e-12;
  v.detail = fmt("n = 3 permutation [0,1,2,4,3,5,6,7], synthesis gap %.3g, sorted F_z for n <= 12", synth);
  return v;
}

Verdict blockwise_speed() {
  const SpinSystem sys(12);
  Rng rng(10);
  HamiltonianSpec spec;
  std::uniform_real_distribution<double> coupling(0.2, 1.5);
  for (int k = 1; k <= 12; ++k) {
    for (int l = k + 1; l <= 12; ++l) spec.couplings.push_back({k, l, coupling(rng)});
    spec.offsets.push_back({k, coupling(rng)});
  }
  const Operator h = build_hamiltonian(sys, spec);
  const Operator q = random_block_operator(sys, 1, rng);
  const double t = 0.37;

  // Warm caches on both paths before timing.
  (void)blockwise_conjugate(h, q, 1, t);
  const auto b0 = Clock::now();
  const Operator blockwise = blockwise_conjugate(h, q, 1, t);
  const double block_time = seconds_since(b0);

  const auto f0 = Clock::now();
  const Operator full = conjugate(expm_hermitian(h, t), q);
  const double full_time = seconds_since(f0);

  const double gap = rel(blockwise.matrix(), full.matrix());
  const double ratio = full_time / std::max(block_time, 1e-9);
  Verdict v;
  v.pass = ratio >= 10.0 && gap <= 1e-10;
  v.detail = fmt("n = 12, k = 1: blockwise %.3g s, full %.3g s", block_time, full_time) +
             fmt(", speedup %.3gx, agreement %.3g", ratio, gap);
  if (v.pass && ratio < 100.0) v.detail += " (below the 100x target; informational)";
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds; 0 means no budget
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dimension tables", 1.0, dimension_tables},
      {2, "subspace census", 1.0, subspace_census},
      {3, "closure suite", 60.0, closure_suite},
      {4, "two-spin isomorphism", 1.0, two_spin_isomorphism},
      {5, "zero-quantum propagation and amplitudes", 30.0, propagation_machinery},
      {6, "selective block confinement", 60.0, block_confinement},
      {7, "subspace cascade", 60.0, cascade_reduction},
      {8, "coherence-order properties", 120.0, coherence_properties},
      {9, "magnetization-sorted encoding", 30.0, encoding_permutation},
      {10, "blockwise speedup", 0.0, blockwise_speed},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    const bool in_budget = c.budget == 0.0 || elapsed <= c.budget;
    const bool pass = v.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), elapsed,
                in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
