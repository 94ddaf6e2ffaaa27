#include "mqspace/base_operator.hpp"

#include <cctype>
#include <cmath>
#include <optional>

#include "mqspace/error.hpp"

namespace mqspace {

namespace {

struct Entry {
  std::size_t col_bit;
  Complex value;
};

// Non-zero of row `row_bit` of a single-spin factor, if any.
std::optional<Entry> factor_entry(Factor f, std::size_t row_bit) {
  const Complex i{0.0, 1.0};
  switch (f) {
    case Factor::E: return Entry{row_bit, 1.0};
    case Factor::X: return Entry{1 - row_bit, 0.5};
    case Factor::Y: return Entry{1 - row_bit, row_bit == 0 ? -0.5 * i : 0.5 * i};
    case Factor::Z: return Entry{row_bit, row_bit == 0 ? 0.5 : -0.5};
    case Factor::Alpha: if (row_bit == 0) return Entry{0, 1.0}; return std::nullopt;
    case Factor::Beta: if (row_bit == 1) return Entry{1, 1.0}; return std::nullopt;
    case Factor::Plus: if (row_bit == 0) return Entry{1, 1.0}; return std::nullopt;
    case Factor::Minus: if (row_bit == 1) return Entry{0, 1.0}; return std::nullopt;
  }
  return std::nullopt;
}

[[noreturn]] void bad_label(std::string_view label, const std::string& why) {
  throw ConfigError("bad_label", "cannot parse operator label '" + std::string(label) + "': " + why);
}

}  // namespace

bool is_cartesian(Factor f) {
  return f == Factor::E || f == Factor::X || f == Factor::Y || f == Factor::Z;
}

Eigen::Matrix2cd single_spin_matrix(Factor f) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (std::size_t r = 0; r < 2; ++r) {
    if (auto e = factor_entry(f, r)) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e->col_bit)) = e->value;
  }
  return m;
}

BaseOperatorSpec::BaseOperatorSpec(BasisKind kind, std::vector<Factor> factors)
    : kind_(kind), factors_(std::move(factors)) {
  if (factors_.empty()) throw ConfigError("bad_spec", "base operator needs at least one factor");
  for (Factor f : factors_) {
    if (is_cartesian(f) != (kind_ == BasisKind::Cartesian)) {
      throw ConfigError("bad_spec", "factor kind does not match basis kind");
    }
  }
}

BaseOperatorSpec BaseOperatorSpec::parse(std::string_view label, int spins) {
  if (label.empty()) bad_label(label, "empty");
  if (spins < 1) bad_label(label, "spin count must be positive");

  std::vector<Factor> factors;
  std::optional<BasisKind> kind;
  auto claim = [&](BasisKind k) {
    if (kind && *kind != k) bad_label(label, "mixes Cartesian and shift factors");
    kind = k;
  };

  if (label == "E") {
    return BaseOperatorSpec(BasisKind::Cartesian, std::vector<Factor>(static_cast<std::size_t>(spins), Factor::E));
  }

  std::size_t pos = 0;
  std::optional<long> prefix;
  if (std::isdigit(static_cast<unsigned char>(label[0]))) {
    long value = 0;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) {
      value = value * 10 + (label[pos] - '0');
      if (value > (1L << 30)) bad_label(label, "prefix too large");
      ++pos;
    }
    prefix = value;
  }

  std::vector<std::pair<int, Factor>> tokens;
  while (pos < label.size()) {
    const char head = label[pos++];
    if (head != 'I' && head != 'a' && head != 'b') bad_label(label, std::string("unexpected '") + head + "'");
    int spin = 0;
    const std::size_t digits_start = pos;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) {
      spin = spin * 10 + (label[pos] - '0');
      if (spin > 1000) bad_label(label, "spin index too large");
      ++pos;
    }
    if (pos == digits_start) bad_label(label, "missing spin index");
    if (label[digits_start] == '0') bad_label(label, "spin indices are 1-based without leading zeros");
    Factor f{};
    if (head == 'a') {
      f = Factor::Alpha;
      claim(BasisKind::Shift);
    } else if (head == 'b') {
      f = Factor::Beta;
      claim(BasisKind::Shift);
    } else {
      if (pos == label.size()) bad_label(label, "missing axis after spin index");
      switch (label[pos++]) {
        case 'x': f = Factor::X; claim(BasisKind::Cartesian); break;
        case 'y': f = Factor::Y; claim(BasisKind::Cartesian); break;
        case 'z': f = Factor::Z; claim(BasisKind::Cartesian); break;
        case '+': f = Factor::Plus; claim(BasisKind::Shift); break;
        case '-': f = Factor::Minus; claim(BasisKind::Shift); break;
        default: bad_label(label, "axis must be one of x, y, z, +, -");
      }
    }
    if (spin > spins) bad_label(label, "spin index " + std::to_string(spin) + " exceeds n = " + std::to_string(spins));
    if (!tokens.empty() && spin <= tokens.back().first) bad_label(label, "spin indices must be strictly ascending");
    tokens.emplace_back(spin, f);
  }
  if (tokens.empty()) bad_label(label, "no factors");

  if (*kind == BasisKind::Shift) {
    if (prefix) bad_label(label, "shift labels take no numeric prefix");
    if (static_cast<int>(tokens.size()) != spins) bad_label(label, "shift labels name every spin");
    for (const auto& [spin, f] : tokens) factors.push_back(f);
    return BaseOperatorSpec(BasisKind::Shift, std::move(factors));
  }

  const long expected = tokens.size() >= 2 ? (1L << (tokens.size() - 1)) : 1;
  if (tokens.size() >= 2 && prefix != expected) {
    bad_label(label, "product of " + std::to_string(tokens.size()) + " factors needs prefix " + std::to_string(expected));
  }
  if (tokens.size() == 1 && prefix) bad_label(label, "single-factor labels take no prefix");
  factors.assign(static_cast<std::size_t>(spins), Factor::E);
  for (const auto& [spin, f] : tokens) factors[static_cast<std::size_t>(spin - 1)] = f;
  return BaseOperatorSpec(BasisKind::Cartesian, std::move(factors));
}

std::string BaseOperatorSpec::label() const {
  std::string out;
  if (kind_ == BasisKind::Cartesian) {
    const int q = active_count();
    if (q == 0) return "E";
    if (q >= 2) out += std::to_string(1L << (q - 1));
    for (int k = 1; k <= spins(); ++k) {
      const Factor f = factor(k);
      if (f == Factor::E) continue;
      out += 'I';
      out += std::to_string(k);
      out += f == Factor::X ? 'x' : f == Factor::Y ? 'y' : 'z';
    }
    return out;
  }
  for (int k = 1; k <= spins(); ++k) {
    switch (factor(k)) {
      case Factor::Alpha: out += 'a' + std::to_string(k); break;
      case Factor::Beta: out += 'b' + std::to_string(k); break;
      case Factor::Plus: out += 'I' + std::to_string(k) + '+'; break;
      case Factor::Minus: out += 'I' + std::to_string(k) + '-'; break;
      default: break;
    }
  }
  return out;
}

double BaseOperatorSpec::prefactor() const {
  if (kind_ == BasisKind::Shift) return 1.0;
  return std::ldexp(1.0, active_count() - 1);
}

int BaseOperatorSpec::active_count() const {
  int count = 0;
  for (Factor f : factors_) {
    if (f != Factor::E && f != Factor::Alpha && f != Factor::Beta) ++count;
  }
  return count;
}

int BaseOperatorSpec::transverse_count() const {
  int count = 0;
  for (Factor f : factors_) {
    if (f == Factor::X || f == Factor::Y || f == Factor::Plus || f == Factor::Minus) ++count;
  }
  return count;
}

int BaseOperatorSpec::longitudinal_count() const {
  int count = 0;
  for (Factor f : factors_) count += f == Factor::Z;
  return count;
}

int BaseOperatorSpec::shift_order() const {
  int order = 0;
  for (Factor f : factors_) order += (f == Factor::Plus) - (f == Factor::Minus);
  return order;
}

namespace detail {

void accumulate_product(Matrix& target, std::span<const Factor> factors, Complex scale) {
  const int n = static_cast<int>(factors.size());
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t col = 0;
    Complex value = scale;
    bool alive = true;
    for (int k = 0; k < n && alive; ++k) {
      const int shift = n - 1 - k;
      auto e = factor_entry(factors[static_cast<std::size_t>(k)], (row >> shift) & 1U);
      if (!e) {
        alive = false;
      } else {
        col |= e->col_bit << shift;
        value *= e->value;
      }
    }
    if (alive) target(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += value;
  }
}

}  // namespace detail

Operator build_operator(const SpinSystem& system, const BaseOperatorSpec& spec) {
  if (spec.spins() != system.spins()) {
    throw ConfigError("spec_length", "spec has " + std::to_string(spec.spins()) + " factors, system has " +
                                         std::to_string(system.spins()) + " spins");
  }
  const auto dim = static_cast<Eigen::Index>(system.dim());
  Matrix m = Matrix::Zero(dim, dim);
  detail::accumulate_product(m, spec.factors(), spec.prefactor());
  return Operator(system, std::move(m),
                  spec.kind() == BasisKind::Cartesian ? Hermiticity::Yes : Hermiticity::Unknown);
}

Operator single_spin_operator(const SpinSystem& system, int k, Factor f) {
  if (k < 1 || k > system.spins()) {
    throw ConfigError("spin_index", "spin index " + std::to_string(k) + " outside [1, " +
                                        std::to_string(system.spins()) + "]");
  }
  std::vector<Factor> factors(static_cast<std::size_t>(system.spins()), Factor::E);
  factors[static_cast<std::size_t>(k - 1)] = f;
  const auto dim = static_cast<Eigen::Index>(system.dim());
  Matrix m = Matrix::Zero(dim, dim);
  detail::accumulate_product(m, factors, 1.0);
  const bool herm = f == Factor::E || f == Factor::X || f == Factor::Y || f == Factor::Z ||
                    f == Factor::Alpha || f == Factor::Beta;
  return Operator(system, std::move(m), herm ? Hermiticity::Yes : Hermiticity::Unknown);
}

BaseOperatorSpec cartesian_spec_from_index(const SpinSystem& system, std::size_t index) {
  static constexpr Factor kDigits[] = {Factor::E, Factor::X, Factor::Y, Factor::Z};
  const int n = system.spins();
  std::vector<Factor> factors(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    factors[static_cast<std::size_t>(k)] = kDigits[index & 3U];
    index >>= 2;
  }
  return BaseOperatorSpec(BasisKind::Cartesian, std::move(factors));
}

BaseOperatorSpec matrix_unit_spec(const SpinSystem& system, std::size_t row, std::size_t col) {
  const int n = system.spins();
  std::vector<Factor> factors(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const bool r = (row & system.spin_mask(k)) != 0;
    const bool c = (col & system.spin_mask(k)) != 0;
    factors[static_cast<std::size_t>(k - 1)] =
        !r && !c ? Factor::Alpha : r && c ? Factor::Beta : !r ? Factor::Plus : Factor::Minus;
  }
  return BaseOperatorSpec(BasisKind::Shift, std::move(factors));
}

std::vector<BaseOperatorSpec> enumerate_basis(const SpinSystem& system, BasisKind kind) {
  const std::size_t dim = system.dim();
  std::vector<BaseOperatorSpec> out;
  out.reserve(dim * dim);
  if (kind == BasisKind::Cartesian) {
    for (std::size_t i = 0; i < dim * dim; ++i) out.push_back(cartesian_spec_from_index(system, i));
  } else {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) out.push_back(matrix_unit_spec(system, r, c));
    }
  }
  return out;
}

}  // namespace mqspace
