#include "mqspace/expansion.hpp"

#include <bit>
#include <cmath>

#include "mqspace/error.hpp"

namespace mqspace {

namespace {

// Per-spin change of basis between the four matrix elements (q00, q01, q10, q11)
// of one tensor slot and the Cartesian amplitudes (E, X, Y, Z).
void to_cartesian(std::vector<Complex>& a, int spins) {
  const Complex i{0.0, 1.0};
  for (int k = 0; k < spins; ++k) {
    const std::size_t stride = std::size_t{1} << (2 * (spins - 1 - k));
    for (std::size_t base = 0; base < a.size(); ++base) {
      if ((base / stride) % 4 != 0) continue;
      Complex& q00 = a[base];
      Complex& q01 = a[base + stride];
      Complex& q10 = a[base + 2 * stride];
      Complex& q11 = a[base + 3 * stride];
      const Complex e = 0.5 * (q00 + q11), x = q01 + q10, y = i * (q01 - q10), z = q00 - q11;
      q00 = e;
      q01 = x;
      q10 = y;
      q11 = z;
    }
  }
}

void from_cartesian(std::vector<Complex>& a, int spins) {
  const Complex i{0.0, 1.0};
  for (int k = 0; k < spins; ++k) {
    const std::size_t stride = std::size_t{1} << (2 * (spins - 1 - k));
    for (std::size_t base = 0; base < a.size(); ++base) {
      if ((base / stride) % 4 != 0) continue;
      const Complex e = a[base], x = a[base + stride], y = a[base + 2 * stride], z = a[base + 3 * stride];
      a[base] = e + 0.5 * z;
      a[base + stride] = 0.5 * x - 0.5 * i * y;
      a[base + 2 * stride] = 0.5 * x + 0.5 * i * y;
      a[base + 3 * stride] = e - 0.5 * z;
    }
  }
}

// Interleaves row and column bits: digit k = 2 * row_k + col_k, spin 1 first.
std::size_t tensor_index(std::size_t row, std::size_t col, int spins) {
  std::size_t idx = 0;
  for (int k = spins - 1; k >= 0; --k) {
    idx = idx * 4 + 2 * ((row >> k) & 1U) + ((col >> k) & 1U);
  }
  return idx;
}

int cartesian_active(std::size_t index) {
  int q = 0;
  for (; index != 0; index >>= 2) q += (index & 3U) != 0;
  return q;
}

}  // namespace

std::optional<Complex> OperatorExpansion::coefficient(std::string_view label) const {
  for (const auto& t : terms) {
    if (t.spec.label() == label) return t.coefficient;
  }
  return std::nullopt;
}

OperatorExpansion expand(const Operator& q, BasisKind kind) {
  const SpinSystem& sys = q.system();
  const int n = sys.spins();
  const std::size_t dim = sys.dim();
  OperatorExpansion out;
  out.basis_kind = kind;
  out.terms.reserve(dim * dim);

  if (kind == BasisKind::Shift) {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        out.terms.push_back({matrix_unit_spec(sys, r, c), q(r, c)});
      }
    }
    out.residual = (q.matrix() - reconstruct(sys, out).matrix()).norm();
    return out;
  }

  std::vector<Complex> a(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) a[tensor_index(r, c, n)] = q(r, c);
  }
  to_cartesian(a, n);
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    a[idx] /= std::ldexp(1.0, cartesian_active(idx) - 1);
    out.terms.push_back({cartesian_spec_from_index(sys, idx), a[idx]});
  }

  // Residual through the inverse transform, independent of the dense builder.
  for (std::size_t idx = 0; idx < a.size(); ++idx) a[idx] *= std::ldexp(1.0, cartesian_active(idx) - 1);
  from_cartesian(a, n);
  double sq = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) sq += std::norm(q(r, c) - a[tensor_index(r, c, n)]);
  }
  out.residual = std::sqrt(sq);
  return out;
}

Operator reconstruct(const SpinSystem& system, const OperatorExpansion& expansion) {
  const auto dim = static_cast<Eigen::Index>(system.dim());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : expansion.terms) {
    if (t.coefficient == Complex{}) continue;
    if (t.spec.spins() != system.spins()) {
      throw ConfigError("spec_length", "expansion term " + t.spec.label() + " does not match the system");
    }
    detail::accumulate_product(m, t.spec.factors(), t.coefficient * t.spec.prefactor());
  }
  return Operator(system, std::move(m));
}

std::vector<double> longitudinal_coefficients(std::span<const double> diagonal, int spins) {
  // Per spin: (d0, d1) -> (E, Z) = ((d0 + d1) / 2, d0 - d1).
  std::vector<double> a(diagonal.begin(), diagonal.end());
  for (int k = 0; k < spins; ++k) {
    const std::size_t bit = std::size_t{1} << (spins - 1 - k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & bit) continue;
      const double d0 = a[i], d1 = a[i | bit];
      a[i] = 0.5 * (d0 + d1);
      a[i | bit] = d0 - d1;
    }
  }
  for (std::size_t mask = 0; mask < a.size(); ++mask) {
    a[mask] /= std::ldexp(1.0, std::popcount(static_cast<std::uint64_t>(mask)) - 1);
  }
  return a;
}

std::vector<double> diagonal_from_longitudinal(std::span<const double> coefficients, int spins) {
  std::vector<double> a(coefficients.begin(), coefficients.end());
  for (std::size_t mask = 0; mask < a.size(); ++mask) {
    a[mask] *= std::ldexp(1.0, std::popcount(static_cast<std::uint64_t>(mask)) - 1);
  }
  for (int k = 0; k < spins; ++k) {
    const std::size_t bit = std::size_t{1} << (spins - 1 - k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & bit) continue;
      const double e = a[i], z = a[i | bit];
      a[i] = e + 0.5 * z;
      a[i | bit] = e - 0.5 * z;
    }
  }
  return a;
}

BaseOperatorSpec longitudinal_spec(int spins, std::size_t mask) {
  std::vector<Factor> factors(static_cast<std::size_t>(spins), Factor::E);
  for (int k = 1; k <= spins; ++k) {
    if (mask & (std::size_t{1} << (spins - k))) factors[static_cast<std::size_t>(k - 1)] = Factor::Z;
  }
  return BaseOperatorSpec(BasisKind::Cartesian, std::move(factors));
}

}  // namespace mqspace
