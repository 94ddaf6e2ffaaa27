#include "mqspace/hamiltonian.hpp"

#include <set>
#include <sstream>

#include "mqspace/error.hpp"

namespace mqspace {

namespace {

void check_spin(const SpinSystem& system, int k) {
  if (k < 1 || k > system.spins()) {
    throw ConfigError("spin_index", "spin index " + std::to_string(k) + " outside [1, " +
                                        std::to_string(system.spins()) + "]");
  }
}

void add_pair(Matrix& m, int n, int k, Factor fk, int l, Factor fl, Complex scale) {
  std::vector<Factor> factors(static_cast<std::size_t>(n), Factor::E);
  factors[static_cast<std::size_t>(k - 1)] = fk;
  factors[static_cast<std::size_t>(l - 1)] = fl;
  detail::accumulate_product(m, factors, scale);
}

}  // namespace

std::string to_string(HamiltonianModel model) {
  switch (model) {
    case HamiltonianModel::FlipFlop: return "flipflop";
    case HamiltonianModel::DipolarSecular: return "dipolar_secular";
    case HamiltonianModel::IsotropicJ: return "isotropic_j";
    case HamiltonianModel::Offsets: return "offsets";
    case HamiltonianModel::Custom: return "custom";
  }
  return "?";
}

HamiltonianModel parse_hamiltonian_model(const std::string& text) {
  for (auto m : {HamiltonianModel::FlipFlop, HamiltonianModel::DipolarSecular, HamiltonianModel::IsotropicJ,
                 HamiltonianModel::Offsets, HamiltonianModel::Custom}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("bad_model", "unknown Hamiltonian model '" + text + "'");
}

Operator build_hamiltonian(const SpinSystem& system, const HamiltonianSpec& spec) {
  const int n = system.spins();
  const auto dim = static_cast<Eigen::Index>(system.dim());
  Matrix m = Matrix::Zero(dim, dim);

  const bool pairwise = spec.model == HamiltonianModel::FlipFlop || spec.model == HamiltonianModel::DipolarSecular ||
                        spec.model == HamiltonianModel::IsotropicJ;
  if (!pairwise && !spec.couplings.empty()) {
    throw ConfigError("bad_couplings", "model " + to_string(spec.model) + " takes no pair couplings");
  }

  std::set<std::pair<int, int>> seen;
  for (const Coupling& c : spec.couplings) {
    check_spin(system, c.k);
    check_spin(system, c.l);
    if (c.k == c.l) throw ConfigError("self_coupling", "coupling of spin " + std::to_string(c.k) + " to itself");
    if (!seen.emplace(std::min(c.k, c.l), std::max(c.k, c.l)).second) {
      throw ConfigError("duplicate_pair", "spin pair (" + std::to_string(c.k) + ", " + std::to_string(c.l) +
                                              ") appears more than once");
    }
    switch (spec.model) {
      case HamiltonianModel::FlipFlop:
        add_pair(m, n, c.k, Factor::Plus, c.l, Factor::Minus, 0.5 * c.j);
        add_pair(m, n, c.k, Factor::Minus, c.l, Factor::Plus, 0.5 * c.j);
        break;
      case HamiltonianModel::DipolarSecular:
        add_pair(m, n, c.k, Factor::Z, c.l, Factor::Z, 2.0 * c.j);
        add_pair(m, n, c.k, Factor::Plus, c.l, Factor::Minus, -0.5 * c.j);
        add_pair(m, n, c.k, Factor::Minus, c.l, Factor::Plus, -0.5 * c.j);
        break;
      case HamiltonianModel::IsotropicJ:
        add_pair(m, n, c.k, Factor::X, c.l, Factor::X, c.j);
        add_pair(m, n, c.k, Factor::Y, c.l, Factor::Y, c.j);
        add_pair(m, n, c.k, Factor::Z, c.l, Factor::Z, c.j);
        break;
      default: break;
    }
  }

  std::set<int> offset_spins;
  for (const Offset& o : spec.offsets) {
    check_spin(system, o.k);
    if (!offset_spins.insert(o.k).second) {
      throw ConfigError("duplicate_offset", "spin " + std::to_string(o.k) + " has more than one offset");
    }
    std::vector<Factor> factors(static_cast<std::size_t>(n), Factor::E);
    factors[static_cast<std::size_t>(o.k - 1)] = Factor::Z;
    detail::accumulate_product(m, factors, o.omega);
  }

  if (spec.model == HamiltonianModel::Custom) {
    for (const ExpansionTerm& t : spec.custom.terms) {
      if (t.spec.spins() != n) {
        throw ConfigError("spec_length", "custom term " + t.spec.label() + " does not match n = " + std::to_string(n));
      }
      detail::accumulate_product(m, t.spec.factors(), t.coefficient * t.spec.prefactor());
    }
    Operator h = Operator::classify(system, std::move(m));
    if (h.hermitian_hint() != Hermiticity::Yes) {
      std::ostringstream msg;
      msg << "custom Hamiltonian is not Hermitian: asymmetry " << h.asymmetry();
      throw NumericalError("not_hermitian", msg.str(), h.asymmetry());
    }
    return h;
  }
  return Operator(system, std::move(m), Hermiticity::Yes);
}

}  // namespace mqspace
