#include "mqspace/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "mqspace/error.hpp"
#include "mqspace/subspaces.hpp"

namespace mqspace {

namespace {

struct Prepared {
  Operator hamiltonian;
  Operator initial;
  std::vector<std::string> labels;
};

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw ConfigError("bad_times", "time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw ConfigError("bad_times", "time points must be finite and non-negative");
    }
    if (i > 0 && times[i] <= times[i - 1]) throw ConfigError("bad_times", "time grid must be strictly increasing");
  }
}

void check_track_label(const std::string& label, int n) {
  const BaseOperatorSpec spec = BaseOperatorSpec::parse(label, n);
  if (spec.kind() == BasisKind::Cartesian) {
    if (!spec.is_diagonal()) {
      throw ConfigError("bad_track", "tracked Cartesian label " + label + " is not a longitudinal product");
    }
    return;
  }
  if (spec.shift_order() != 0 || spec.transverse_count() == 0) {
    throw ConfigError("bad_track", "tracked shift label " + label + " is not a zero-quantum coherence");
  }
}

Prepared prepare(const DiffusionConfig& config) {
  const SpinSystem& sys = config.system;
  check_times(config.times);
  const BaseOperatorSpec init = BaseOperatorSpec::parse(config.initial, sys.spins());
  if (init.kind() != BasisKind::Cartesian || !init.is_diagonal() || init.active_count() == 0) {
    throw ConfigError("bad_initial", "initial operator " + config.initial +
                                         " must be a traceless longitudinal base operator");
  }
  if (config.track) {
    for (const std::string& label : *config.track) check_track_label(label, sys.spins());
  }
  Operator h = build_hamiltonian(sys, config.hamiltonian);
  Operator q = build_operator(sys, init);
  require_profile_preconditions(h, q);
  return Prepared{std::move(h), std::move(q), config.track.value_or(std::vector<std::string>{})};
}

double z_magnetization(const Operator& rho) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) sum += 0.5 * rho.system().twice_magnetization(i) * rho(i, i).real();
  return sum;
}

void finish(const DiffusionConfig& config, Prepared& prep, DiffusionTrace& trace) {
  if (config.purge) {
    for (auto& p : trace.profiles) p = purge(p);
  }
  const AmplitudeProfile& first = trace.profiles.front();
  if (!config.track) {
    for (const auto& a : first.longitudinal) prep.labels.push_back(a.label);
    for (const auto& a : first.spin_orders) prep.labels.push_back(a.label);
    for (const auto& a : first.zqc) prep.labels.push_back(a.label);
  }
  std::unordered_map<std::string, bool> undesired;
  for (const auto& a : first.spin_orders) undesired.emplace(a.label, true);
  for (const auto& a : first.zqc) undesired.emplace(a.label, true);

  for (const std::string& label : prep.labels) {
    std::vector<Complex> series;
    series.reserve(trace.profiles.size());
    for (const auto& p : trace.profiles) series.push_back(p.amplitude(label).value_or(Complex{}));
    trace.channels.emplace_back(label, std::move(series));
    if (undesired.count(label) != 0) trace.undesired.push_back(label);
  }
}

}  // namespace

const std::vector<Complex>& DiffusionTrace::channel(const std::string& label) const {
  for (const auto& [name, series] : channels) {
    if (name == label) return series;
  }
  throw ConfigError("bad_track", "label " + label + " is not tracked");
}

std::vector<double> time_grid(double start, double end, std::size_t steps) {
  if (steps == 0) throw ConfigError("bad_times", "time grid needs at least one step");
  if (steps == 1) return {start};
  if (!(end > start)) throw ConfigError("bad_times", "time grid end must exceed start");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = start + (end - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  out.back() = end;
  return out;
}

DiffusionTrace run_diffusion(const DiffusionConfig& config) {
  Prepared prep = prepare(config);
  const ZeroQuantumPropagator propagator(prep.hamiltonian);
  DiffusionTrace trace;
  for (double t : config.times) {
    const Operator rho = conjugate(propagator.at(t), prep.initial);
    trace.profiles.push_back(profile_of(rho, t));
    trace.conserved.push_back(z_magnetization(rho));
  }
  finish(config, prep, trace);
  return trace;
}

DiffusionTrace run_blockwise(const DiffusionConfig& config) {
  Prepared prep = prepare(config);
  const SpinSystem& sys = config.system;
  const auto dim = static_cast<Eigen::Index>(sys.dim());

  struct Piece {
    std::vector<Eigen::Index> idx;
    Matrix block;
    BlockEvolver evolver;
  };
  std::vector<Piece> pieces;
  DiffusionTrace trace;
  const std::vector<SelectiveBlock> blocks = selective_blocks(sys);
  for (const BlockComponent& comp : decompose_zq(prep.initial)) {
    const auto& states = blocks[static_cast<std::size_t>(comp.k)].state_indices;
    std::vector<Eigen::Index> idx(states.begin(), states.end());
    Matrix block = comp.component.matrix()(idx, idx);
    trace.block_costs.push_back(BlockCost{comp.k, static_cast<std::uint64_t>(idx.size() * idx.size())});
    pieces.push_back(Piece{std::move(idx), std::move(block), BlockEvolver(prep.hamiltonian, comp.k)});
  }

  for (double t : config.times) {
    Matrix rho = Matrix::Zero(dim, dim);
    for (const Piece& piece : pieces) rho(piece.idx, piece.idx) = piece.evolver.evolve_block(piece.block, t);
    const Operator evolved = Operator::classify(sys, std::move(rho));
    trace.profiles.push_back(profile_of(evolved, t));
    trace.conserved.push_back(z_magnetization(evolved));
  }
  finish(config, prep, trace);
  return trace;
}

AmplitudeProfile purge(const AmplitudeProfile& profile) {
  AmplitudeProfile out = profile;
  for (auto& a : out.spin_orders) a.value = 0.0;
  for (auto& a : out.zqc) a.value = Complex{};
  out.purged = true;
  return out;
}

BlockCostSummary block_cost(int n) {
  const SubspaceDims dims = subspace_dims(n);
  return BlockCostSummary{dims.zero_quantum, dims.full,
                          static_cast<double>(dims.zero_quantum) / static_cast<double>(dims.full)};
}

}  // namespace mqspace
