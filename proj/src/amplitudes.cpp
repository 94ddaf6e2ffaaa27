#include "mqspace/amplitudes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mqspace/base_operator.hpp"
#include "mqspace/error.hpp"
#include "mqspace/expansion.hpp"

namespace mqspace {

namespace {

[[noreturn]] void precondition_failure(const std::string& what, double residual) {
  std::ostringstream msg;
  msg << what << " (residual " << residual << ")";
  throw NumericalError("precondition", msg.str(), residual);
}

// Spin-order masks ordered by factor count, then by ascending spin indices.
std::vector<std::size_t> spin_order_masks(int spins) {
  std::vector<std::size_t> masks;
  for (std::size_t m = 1; m < (std::size_t{1} << spins); ++m) {
    if (std::popcount(static_cast<std::uint64_t>(m)) >= 2) masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
    const int pa = std::popcount(static_cast<std::uint64_t>(a));
    const int pb = std::popcount(static_cast<std::uint64_t>(b));
    return pa != pb ? pa < pb : a > b;
  });
  return masks;
}

}  // namespace

std::optional<Complex> AmplitudeProfile::amplitude(std::string_view label) const {
  if (label == "E") return Complex{identity};
  for (const auto& a : longitudinal) {
    if (a.label == label) return Complex{a.value};
  }
  for (const auto& a : spin_orders) {
    if (a.label == label) return Complex{a.value};
  }
  for (const auto& a : zqc) {
    if (a.label == label) return a.value;
  }
  return std::nullopt;
}

AmplitudeProfile profile_of(const Operator& evolved, double time) {
  const SpinSystem& sys = evolved.system();
  const int n = sys.spins();
  const std::size_t dim = sys.dim();
  AmplitudeProfile p;
  p.time = time;

  std::vector<double> diag(dim);
  double sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    diag[i] = evolved(i, i).real();
    sq += evolved(i, i).imag() * evolved(i, i).imag();
  }
  const std::vector<double> coeff = longitudinal_coefficients(diag, n);
  p.identity = coeff[0];
  for (int k = 1; k <= n; ++k) {
    const std::size_t mask = sys.spin_mask(k);
    p.longitudinal.push_back({longitudinal_spec(n, mask).label(), coeff[mask]});
  }
  for (std::size_t mask : spin_order_masks(n)) {
    p.spin_orders.push_back({longitudinal_spec(n, mask).label(), coeff[mask]});
  }

  const std::vector<double> rebuilt = diagonal_from_longitudinal(coeff, n);
  for (std::size_t i = 0; i < dim; ++i) sq += (diag[i] - rebuilt[i]) * (diag[i] - rebuilt[i]);

  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (r == c) continue;
      if (SpinSystem::down_count(r) == SpinSystem::down_count(c)) {
        p.zqc.push_back({matrix_unit_spec(sys, r, c).label(), r, c, evolved(r, c)});
      } else {
        sq += std::norm(evolved(r, c));
      }
    }
  }
  p.residual = std::sqrt(sq);
  return p;
}

Operator reconstruct(const SpinSystem& system, const AmplitudeProfile& profile) {
  const int n = system.spins();
  const std::size_t dim = system.dim();
  std::vector<double> coeff(dim, 0.0);
  coeff[0] = profile.identity;
  for (const auto& bin : {&profile.longitudinal, &profile.spin_orders}) {
    for (const auto& a : *bin) {
      const BaseOperatorSpec spec = BaseOperatorSpec::parse(a.label, n);
      std::size_t mask = 0;
      for (int k = 1; k <= n; ++k) {
        if (spec.factor(k) == Factor::Z) mask |= system.spin_mask(k);
      }
      coeff[mask] = a.value;
    }
  }
  const std::vector<double> diag = diagonal_from_longitudinal(coeff, n);
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  for (const auto& a : profile.zqc) {
    m(static_cast<Eigen::Index>(a.row), static_cast<Eigen::Index>(a.col)) = a.value;
  }
  return Operator::classify(system, std::move(m));
}

void require_profile_preconditions(const Operator& z, const Operator& q) {
  require_same_system(z, q);
  if (!is_hermitian(z, kMembershipTolerance)) precondition_failure("generator is not Hermitian", z.asymmetry());
  const Membership zm = is_member(z, SubspaceTag::ZeroQuantum);
  if (!zm.member) precondition_failure("generator is not zero-quantum", zm.residual);
  if (!is_hermitian(q, kMembershipTolerance)) precondition_failure("operator is not Hermitian", q.asymmetry());
  const Membership qm = is_member(q, SubspaceTag::ZeroQuantum);
  if (!qm.member) precondition_failure("operator is not zero-quantum", qm.residual);
  // |tr q| <= sqrt(dim) * ||q||_F bounds the scale.
  const double trace = std::abs(q.trace());
  if (trace > kMembershipTolerance * std::sqrt(static_cast<double>(q.dim())) * q.frobenius_norm()) {
    precondition_failure("operator is not traceless", trace);
  }
}

AmplitudeProfile amplitude_profile(const Operator& z, const Operator& q, double t) {
  require_profile_preconditions(z, q);
  return profile_of(conjugate(zq_propagator(z, t), q), t);
}

}  // namespace mqspace
