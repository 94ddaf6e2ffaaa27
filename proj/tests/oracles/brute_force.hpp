#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// builders, transforms or eigensolvers, so they can serve as independent checks.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Eigen::Matrix2cd pauli(char axis) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (axis) {
    case 'x': m << 0.0, 0.5, 0.5, 0.0; break;
    case 'y': m << 0.0, -0.5 * i, 0.5 * i, 0.0; break;
    case 'z': m << 0.5, 0.0, 0.0, -0.5; break;
    case '+': m << 0.0, 1.0, 0.0, 0.0; break;
    case '-': m << 0.0, 0.0, 1.0, 0.0; break;
    case 'a': m << 1.0, 0.0, 0.0, 0.0; break;
    case 'b': m << 0.0, 0.0, 0.0, 1.0; break;
    default: m.setIdentity(); break;
  }
  return m;
}

/// Kronecker product of single-spin factors, spin 1 leftmost. 'E' is identity.
inline Matrix kron(const std::string& axes) {
  Matrix out = Matrix::Identity(1, 1);
  for (char a : axes) {
    const Matrix f = pauli(a);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

/// Single factor on spin k (1-based) of an n-spin system.
inline Matrix on_spin(int n, int k, char axis) {
  std::string axes(static_cast<std::size_t>(n), 'E');
  axes[static_cast<std::size_t>(k - 1)] = axis;
  return kron(axes);
}

/// Scaling-and-squaring Pade exponential of -i h t.
inline Matrix expm(const Matrix& h, double t) {
  const Complex i{0.0, 1.0};
  const Matrix a = (-i * t) * h;
  return a.exp();
}

/// Coefficient of q on a base operator b: tr(b^dagger q) / tr(b^dagger b).
inline Complex coefficient(const Matrix& b, const Matrix& q) {
  return (b.adjoint() * q).trace() / (b.adjoint() * b).trace();
}

/// Cartesian product operator with the 2^(q-1) prefactor, axes over {E,x,y,z}.
inline Matrix cartesian(const std::string& axes) {
  int q = 0;
  for (char a : axes) q += a != 'E';
  return std::ldexp(1.0, q - 1) * kron(axes);
}

/// All 4^n Cartesian axis strings in base-4 order (E, x, y, z), spin 1 first.
inline std::vector<std::string> cartesian_axes(int n) {
  static const char digits[] = {'E', 'x', 'y', 'z'};
  std::vector<std::string> out;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::string s(static_cast<std::size_t>(n), 'E');
    std::size_t v = idx;
    for (int k = n - 1; k >= 0; --k) {
      s[static_cast<std::size_t>(k)] = digits[v & 3U];
      v >>= 2;
    }
    out.push_back(s);
  }
  return out;
}

inline int popcount(std::size_t v) {
  int c = 0;
  for (; v; v >>= 1) c += static_cast<int>(v & 1U);
  return c;
}

inline std::uint64_t binomial_by_census(int n, int k) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) count += popcount(i) == k;
  return count;
}

}  // namespace oracle
