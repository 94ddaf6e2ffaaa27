#include "cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "json.hpp"
#include "mqspace/mqspace.hpp"

namespace mqspace::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Flags {
  std::optional<int> n;
  std::optional<std::string> config;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> engine;
  std::optional<std::string> out;
  std::optional<std::string> basis;
  bool generators = false;
  bool profiles = false;
};

struct Settings {
  SpinSystem system{1};
  std::uint64_t seed = 0;
  std::string format;
  std::optional<std::string> out;
  RunConfig config;
};

std::string real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

template <class T>
std::string show(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

/// The config document wins over a conflicting flag, with a warning.
template <class T>
std::optional<T> merge(const char* name, const std::optional<T>& flag, const std::optional<T>& config,
                       std::ostream& err) {
  if (flag && config && *flag != *config) {
    err << "warning: config value " << name << "=" << show(*config) << " overrides --" << name << " " << show(*flag)
        << "\n";
  }
  return config ? config : flag;
}

Settings resolve(const Flags& flags, const std::string& default_format, std::ostream& err) {
  Settings s;
  if (flags.config) s.config = load_config(*flags.config);
  const auto n = merge("n", flags.n, s.config.n, err);
  if (!n) throw ConfigError("missing_n", "the spin count is required (--n or \"n\" in the config)");
  s.system = SpinSystem(*n, max_spins_from_environment());
  s.seed = merge("seed", flags.seed, s.config.seed, err).value_or(0);
  s.format = merge("format", flags.format, s.config.format, err).value_or(default_format);
  s.out = merge("out", flags.out, s.config.out, err);
  return s;
}

void require_json(const Settings& s, const char* command) {
  if (s.format != "json") {
    throw ConfigError("unsupported_format", std::string(command) + " only emits JSON reports");
  }
}

void emit(const Settings& s, const std::string& payload, std::ostream& out) {
  if (!s.out) {
    out << payload;
    return;
  }
  std::ofstream file(*s.out, std::ios::binary);
  if (!file) throw ConfigError("output_unwritable", "cannot write " + *s.out);
  file << payload;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// basis

std::vector<int> orders_of(const BaseOperatorSpec& spec) {
  if (spec.kind() == BasisKind::Shift) return {spec.shift_order()};
  const int t = spec.transverse_count();
  std::vector<int> orders;
  for (int p = -t; p <= t; p += 2) orders.push_back(p);
  return orders;
}

SubspaceTag tag_of(const BaseOperatorSpec& spec) {
  if (spec.is_diagonal()) return SubspaceTag::LOMSO;
  if (spec.kind() == BasisKind::Shift) {
    const int p = spec.shift_order();
    if (p == 0) return SubspaceTag::ZeroQuantum;
    return p % 2 == 0 ? SubspaceTag::EvenMQ : SubspaceTag::Full;
  }
  return spec.transverse_count() % 2 == 0 ? SubspaceTag::EvenMQ : SubspaceTag::Full;
}

std::string cmd_basis(const Settings& s, const Flags& flags, std::ostream& err) {
  const std::string basis = merge("basis", flags.basis, s.config.basis, err).value_or("cartesian");
  const BasisKind kind = basis == "shift" ? BasisKind::Shift : BasisKind::Cartesian;
  const auto specs = enumerate_basis(s.system, kind);
  if (s.format == "csv") {
    std::string csv = "index,label,orders,subspace\n";
    for (std::size_t i = 0; i < specs.size(); ++i) {
      std::string orders;
      for (int p : orders_of(specs[i])) orders += (orders.empty() ? "" : ";") + std::to_string(p);
      csv += std::to_string(i) + "," + specs[i].label() + "," + orders + "," + to_string(tag_of(specs[i])) + "\n";
    }
    return csv;
  }
  ojson ops = ojson::array();
  for (const auto& spec : specs) {
    ops.push_back({{"label", spec.label()}, {"orders", orders_of(spec)}, {"subspace", to_string(tag_of(spec))}});
  }
  return dump({{"n", s.system.spins()}, {"basis", basis}, {"operators", std::move(ops)}});
}

// dims

std::string cmd_dims(const Settings& s) {
  const int n = s.system.spins();
  const SubspaceDims d = subspace_dims(n);
  std::vector<std::uint64_t> blocks;
  for (int k = 0; k <= n; ++k) blocks.push_back(block_dimension(n, k));
  const BlockCostSummary cost = block_cost(n);
  if (s.format == "csv") {
    std::string csv = "table,key,value\n";
    csv += "subspace,LOMSO," + std::to_string(d.lomso) + "\n";
    csv += "subspace,ZeroQuantum," + std::to_string(d.zero_quantum) + "\n";
    csv += "subspace,EvenMQ," + std::to_string(d.even_mq) + "\n";
    csv += "subspace,Full," + std::to_string(d.full) + "\n";
    for (int k = 0; k <= n; ++k) csv += "block," + std::to_string(k) + "," + std::to_string(blocks[k]) + "\n";
    csv += "cost,blockwise_entries," + std::to_string(cost.blockwise_entries) + "\n";
    csv += "cost,full_entries," + std::to_string(cost.full_entries) + "\n";
    csv += "cost,ratio," + real(cost.ratio) + "\n";
    return csv;
  }
  return dump({{"n", n},
               {"subspaces",
                {{"LOMSO", d.lomso}, {"ZeroQuantum", d.zero_quantum}, {"EvenMQ", d.even_mq}, {"Full", d.full}}},
               {"d", blocks},
               {"sum_d_squared", cost.blockwise_entries},
               {"full_entries", cost.full_entries},
               {"ratio", cost.ratio}});
}

// evolve

DiffusionConfig diffusion_config(const Settings& s) {
  const RunConfig& c = s.config;
  if (!c.hamiltonian) throw ConfigError("missing_hamiltonian", "evolve needs a \"hamiltonian\" section in --config");
  if (!c.times) throw ConfigError("missing_times", "evolve needs a \"times\" entry in --config");
  DiffusionConfig d;
  d.system = s.system;
  d.hamiltonian = to_spec(*c.hamiltonian, s.system.spins());
  d.initial = c.initial.value_or("I1z");
  d.times = c.times->explicit_times.empty() ? time_grid(*c.times->start, *c.times->end, *c.times->steps)
                                            : c.times->explicit_times;
  d.purge = c.purge.value_or(false);
  if (c.track) {
    d.track = *c.track;
  } else {
    std::vector<std::string> longitudinal;
    for (int k = 1; k <= s.system.spins(); ++k) {
      longitudinal.push_back(longitudinal_spec(s.system.spins(), s.system.spin_mask(k)).label());
    }
    d.track = std::move(longitudinal);
  }
  return d;
}

double profile_gap(const AmplitudeProfile& a, const AmplitudeProfile& b) {
  double gap = std::abs(a.identity - b.identity);
  for (std::size_t i = 0; i < a.longitudinal.size(); ++i) {
    gap = std::max(gap, std::abs(a.longitudinal[i].value - b.longitudinal[i].value));
  }
  for (std::size_t i = 0; i < a.spin_orders.size(); ++i) {
    gap = std::max(gap, std::abs(a.spin_orders[i].value - b.spin_orders[i].value));
  }
  for (std::size_t i = 0; i < a.zqc.size(); ++i) gap = std::max(gap, std::abs(a.zqc[i].value - b.zqc[i].value));
  return gap;
}

bool is_coherence(const std::string& label) { return label.find('+') != std::string::npos; }

ojson profile_json(const AmplitudeProfile& p) {
  ojson longitudinal = ojson::object(), orders = ojson::object(), zqc = ojson::object();
  for (const auto& a : p.longitudinal) longitudinal[a.label] = a.value;
  for (const auto& a : p.spin_orders) orders[a.label] = a.value;
  for (const auto& a : p.zqc) zqc[a.label] = {a.value.real(), a.value.imag()};
  return {{"time", p.time}, {"identity", p.identity}, {"longitudinal", std::move(longitudinal)},
          {"spin_orders", std::move(orders)}, {"zqc", std::move(zqc)}, {"residual", p.residual},
          {"purged", p.purged}};
}

struct EvolveResult {
  std::string payload;
  std::optional<double> disagreement;
  double tolerance = 0.0;
};

EvolveResult cmd_evolve(const Settings& s, const Flags& flags, std::ostream& err) {
  const std::string engine = merge("engine", flags.engine, s.config.engine, err).value_or("full");
  const DiffusionConfig config = diffusion_config(s);
  const double tolerance = s.config.tolerances.engine_agreement.value_or(1e-10);

  DiffusionTrace trace = engine == "blockwise" ? run_blockwise(config) : run_diffusion(config);
  std::vector<double> discrepancy;
  std::vector<BlockCost> costs = trace.block_costs;
  if (engine == "both") {
    const DiffusionTrace other = run_blockwise(config);
    costs = other.block_costs;
    for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
      discrepancy.push_back(profile_gap(trace.profiles[t], other.profiles[t]));
    }
  }

  EvolveResult result;
  result.tolerance = tolerance;
  if (!discrepancy.empty()) result.disagreement = *std::max_element(discrepancy.begin(), discrepancy.end());

  if (s.format == "csv") {
    std::string csv = "t";
    for (const auto& [label, series] : trace.channels) {
      csv += is_coherence(label) ? "," + label + ".re," + label + ".im" : "," + label;
    }
    if (!discrepancy.empty()) csv += ",max_channel_discrepancy";
    csv += "\n";
    for (std::size_t t = 0; t < config.times.size(); ++t) {
      csv += real(config.times[t]);
      for (const auto& [label, series] : trace.channels) {
        csv += "," + real(series[t].real());
        if (is_coherence(label)) csv += "," + real(series[t].imag());
      }
      if (!discrepancy.empty()) csv += "," + real(discrepancy[t]);
      csv += "\n";
    }
    result.payload = csv;
    return result;
  }

  ojson channels = ojson::array();
  for (const auto& [label, series] : trace.channels) {
    const bool undesired = std::find(trace.undesired.begin(), trace.undesired.end(), label) != trace.undesired.end();
    ojson entry = {{"label", label}, {"undesired", undesired}};
    std::vector<double> re, im;
    for (const Complex& v : series) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    if (is_coherence(label)) {
      entry["re"] = re;
      entry["im"] = im;
    } else {
      entry["values"] = re;
    }
    channels.push_back(std::move(entry));
  }
  ojson doc = {{"n", s.system.spins()},
               {"engine", engine},
               {"initial", config.initial},
               {"purge", config.purge},
               {"times", config.times},
               {"channels", std::move(channels)},
               {"conserved", trace.conserved}};
  if (!costs.empty()) {
    ojson list = ojson::array();
    for (const auto& c : costs) list.push_back({{"k", c.k}, {"entries", c.entries}});
    doc["block_costs"] = std::move(list);
  }
  if (!discrepancy.empty()) doc["max_channel_discrepancy"] = discrepancy;
  if (flags.profiles) {
    ojson list = ojson::array();
    for (const auto& p : trace.profiles) list.push_back(profile_json(p));
    doc["profiles"] = std::move(list);
  }
  result.payload = dump(doc);
  return result;
}

// cascade

ojson membership_json(const Membership& m) { return {{"member", m.member}, {"residual", m.residual}}; }

std::string cmd_cascade(const Settings& s, bool& passed) {
  require_json(s, "cascade");
  Operator h = Operator::zero(s.system);
  std::string source;
  if (s.config.hamiltonian) {
    h = build_hamiltonian(s.system, to_spec(*s.config.hamiltonian, s.system.spins()));
    source = "config";
  } else {
    Rng rng(s.seed);
    h = random_hermitian(s.system, rng);
    source = "random";
  }
  const CascadeResult r = cascade(h);
  passed = r.passed();

  static const char* targets[] = {"parity", "popcount", "singleton"};
  static const SubspaceTag constraints[] = {SubspaceTag::Full, SubspaceTag::EvenMQ, SubspaceTag::ZeroQuantum};
  static const SubspaceTag reached[] = {SubspaceTag::EvenMQ, SubspaceTag::ZeroQuantum, SubspaceTag::LOMSO};
  ojson stages = ojson::array();
  for (std::size_t i = 0; i < 3; ++i) {
    stages.push_back({{"stage", i + 1},
                      {"target", targets[i]},
                      {"constraint", to_string(constraints[i])},
                      {"reaches", to_string(reached[i])},
                      {"residual", r.residuals[i]},
                      {"member", r.stage_members[i]},
                      {"fallback_used", r.stages[i].fallback_used}});
  }
  Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Matrix>(h.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  std::vector<double> diagonal(s.system.dim());
  for (std::size_t i = 0; i < diagonal.size(); ++i) diagonal[i] = r.h(3)(i, i).real();
  std::sort(diagonal.begin(), diagonal.end());
  return dump({{"n", s.system.spins()},
               {"source", source},
               {"seed", s.seed},
               {"stages", std::move(stages)},
               {"v2_even_mq", membership_json(r.v2_even_mq)},
               {"v3_zero_quantum", membership_json(r.v3_zero_quantum)},
               {"spectrum",
                {{"eigenvalues", std::vector<double>(eig.data(), eig.data() + eig.size())},
                 {"diagonal", diagonal},
                 {"deviation", r.spectrum_deviation},
                 {"preserved", r.spectrum_preserved}}},
               {"passed", passed}});
}

// perm

std::string cmd_perm(const Settings& s, const Flags& flags) {
  const Encoding enc = iz_sorted_encoding(s.system);
  if (s.format == "csv") {
    std::string csv = "position,index,twice_m\n";
    for (std::size_t i = 0; i < enc.size(); ++i) {
      const std::size_t idx = enc.permutation()[i];
      csv += std::to_string(i) + "," + std::to_string(idx) + "," +
             std::to_string(s.system.twice_magnetization(idx)) + "\n";
    }
    return csv;
  }
  const auto swaps = synthesize_permutation(enc);
  ojson transpositions = ojson::array();
  for (const auto& sw : swaps) transpositions.push_back({sw.i, sw.j});
  ojson doc = {{"n", s.system.spins()},
               {"permutation", enc.permutation()},
               {"cycles", enc.cycles()},
               {"transpositions", std::move(transpositions)},
               {"angle", std::numbers::pi}};
  if (flags.generators) {
    ojson list = ojson::array();
    for (const auto& sw : swaps) {
      const Matrix g = sw.generator(s.system).matrix();
      std::vector<std::vector<double>> grid(s.system.dim(), std::vector<double>(s.system.dim()));
      for (std::size_t r = 0; r < grid.size(); ++r) {
        for (std::size_t c = 0; c < grid.size(); ++c) {
          grid[r][c] = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).real();
        }
      }
      list.push_back({{"i", sw.i}, {"j", sw.j}, {"angle", sw.angle}, {"generator", std::move(grid)}});
    }
    doc["generators"] = std::move(list);
  }
  return dump(doc);
}

// verify

std::string cmd_verify(const Settings& s, bool& passed) {
  require_json(s, "verify");
  const std::size_t closure_trials = s.config.trials.closure.value_or(50);
  const std::size_t order_trials = s.config.trials.order.value_or(20);
  const std::size_t extreme_trials = s.config.trials.extreme.value_or(50);
  const std::optional<double> tolerance = s.config.tolerances.verify;
  // An explicit tolerance replaces the library verdicts with a residual comparison.
  auto within = [&](bool library_verdict, double residual) {
    return tolerance ? residual <= *tolerance : library_verdict;
  };

  passed = true;
  ojson closure = ojson::array();
  for (SubspaceTag tag : {SubspaceTag::LOMSO, SubspaceTag::ZeroQuantum, SubspaceTag::EvenMQ}) {
    const ClosureReport r = verify_closure(tag, s.system, closure_trials, s.seed);
    const bool ok = r.identity_member && within(r.failures.empty(), r.max_relative_residual);
    passed = passed && ok;
    closure.push_back({{"tag", to_string(tag)},
                       {"trials", r.trials},
                       {"max_relative_residual", r.max_relative_residual},
                       {"identity_member", r.identity_member},
                       {"failures", r.failures.size()},
                       {"passed", ok}});
  }

  const OrderPreservationReport order = verify_order_preservation(s.system, order_trials, s.seed);
  const double order_max = std::max({order.max_left, order.max_right, order.max_commutator});
  const bool order_ok = within(order.passed(), order_max);
  const ExtremeStatesReport extreme = verify_extreme_states(s.system, extreme_trials, s.seed);
  const bool extreme_ok = within(extreme.passed(), extreme.max_residual);
  passed = passed && order_ok && extreme_ok;

  return dump({{"n", s.system.spins()},
               {"seed", s.seed},
               {"closure", std::move(closure)},
               {"order_preservation",
                {{"trials", order.trials},
                 {"checks", order.checks},
                 {"max_left", order.max_left},
                 {"max_right", order.max_right},
                 {"max_commutator", order.max_commutator},
                 {"violations", order.violations.size()},
                 {"passed", order_ok}}},
               {"extreme_states",
                {{"basis_checked", extreme.basis_checked},
                 {"random_checked", extreme.random_checked},
                 {"max_residual", extreme.max_residual},
                 {"violations", extreme.violations.size()},
                 {"passed", extreme_ok}}},
               {"passed", passed}});
}

// errors

void error_line(std::ostream& err, const char* kind, const std::string& reason, const std::string& detail,
                std::optional<double> residual = std::nullopt) {
  err << "error kind=" << kind << " reason=" << reason;
  if (residual) err << " residual=" << real(*residual);
  err << " detail=" << nlohmann::json(detail).dump() << "\n";
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "number of spins");
  sub->add_option("--config", f.config, "JSON configuration file");
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", f.seed, "seed for randomized suites");
  sub->add_option("--out", f.out, "write output to this path");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple-quantum operator subspaces of spin-1/2 systems", "mqspace"};
  app.require_subcommand(1);
  Flags flags;

  auto* basis = app.add_subcommand("basis", "enumerate base operators with coherence orders and subspaces");
  add_common(basis, flags);
  basis->add_option("--basis", flags.basis, "cartesian or shift")->check(CLI::IsMember({"cartesian", "shift"}));
  auto* dims = app.add_subcommand("dims", "subspace and selective block dimensions");
  add_common(dims, flags);
  auto* evolve = app.add_subcommand("evolve", "spin-diffusion run under a zero-quantum Hamiltonian");
  add_common(evolve, flags);
  evolve->add_option("--engine", flags.engine, "full, blockwise or both")
      ->check(CLI::IsMember({"full", "blockwise", "both"}));
  evolve->add_flag("--profiles", flags.profiles, "include full amplitude profiles in JSON output");
  auto* cascade_cmd = app.add_subcommand("cascade", "three-stage subspace reduction of a generator");
  add_common(cascade_cmd, flags);
  auto* perm = app.add_subcommand("perm", "magnetization-sorted encoding and its synthesis");
  add_common(perm, flags);
  perm->add_flag("--generators", flags.generators, "include dense generator matrices");
  auto* verify = app.add_subcommand("verify", "closure, order preservation and extreme-state checks");
  add_common(verify, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "config", "bad_arguments", e.what());
    return kExitConfig;
  }

  try {
    if (basis->parsed()) {
      const Settings s = resolve(flags, "csv", err);
      emit(s, cmd_basis(s, flags, err), out);
    } else if (dims->parsed()) {
      const Settings s = resolve(flags, "csv", err);
      emit(s, cmd_dims(s), out);
    } else if (evolve->parsed()) {
      const Settings s = resolve(flags, "csv", err);
      const EvolveResult r = cmd_evolve(s, flags, err);
      emit(s, r.payload, out);
      if (r.disagreement && *r.disagreement > r.tolerance) {
        error_line(err, "numerical", "engine_disagreement", "full and blockwise engines differ beyond tolerance",
                   *r.disagreement);
        return kExitNumerical;
      }
    } else if (cascade_cmd->parsed()) {
      const Settings s = resolve(flags, "json", err);
      bool passed = false;
      emit(s, cmd_cascade(s, passed), out);
      if (!passed) {
        error_line(err, "numerical", "cascade_tolerance", "a cascade invariant exceeded its tolerance");
        return kExitNumerical;
      }
    } else if (perm->parsed()) {
      const Settings s = resolve(flags, "json", err);
      emit(s, cmd_perm(s, flags), out);
    } else if (verify->parsed()) {
      const Settings s = resolve(flags, "json", err);
      bool passed = false;
      emit(s, cmd_verify(s, passed), out);
      if (!passed) {
        error_line(err, "numerical", "verification_failed", "at least one property check reported a violation");
        return kExitNumerical;
      }
    }
  } catch (const ConfigError& e) {
    error_line(err, "config", e.reason(), e.what());
    return kExitConfig;
  } catch (const NumericalError& e) {
    error_line(err, "numerical", e.reason(), e.what(), e.residual());
    return kExitNumerical;
  } catch (const InvariantError& e) {
    error_line(err, "invariant", e.reason(), e.what());
    return kExitInvariant;
  } catch (const std::exception& e) {
    error_line(err, "invariant", "internal", e.what());
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace mqspace::cli
