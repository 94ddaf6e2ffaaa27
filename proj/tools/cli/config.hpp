#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqspace/hamiltonian.hpp"
#include "mqspace/operator.hpp"

namespace mqspace::cli {

/// Hamiltonian section as written in the document. Custom labels stay raw
/// until the spin count is known.
struct HamiltonianSection {
  HamiltonianModel model = HamiltonianModel::FlipFlop;
  std::vector<Coupling> couplings;
  std::vector<Offset> offsets;
  std::vector<std::pair<std::string, Complex>> custom;
};

struct TimeGrid {
  std::vector<double> explicit_times;
  std::optional<double> start;
  std::optional<double> end;
  std::optional<std::size_t> steps;
};

struct Tolerances {
  std::optional<double> engine_agreement;
  std::optional<double> verify;
};

struct VerifyTrials {
  std::optional<std::size_t> closure;
  std::optional<std::size_t> order;
  std::optional<std::size_t> extreme;
};

/// A parsed configuration document. Every field is optional; absent fields
/// fall back to command-line flags and then to defaults.
struct RunConfig {
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<HamiltonianSection> hamiltonian;
  std::optional<std::string> initial;
  std::optional<TimeGrid> times;
  std::optional<bool> purge;
  /// Empty optional inside: "all".
  std::optional<std::optional<std::vector<std::string>>> track;
  std::optional<std::string> engine;
  std::optional<std::string> basis;
  std::optional<std::string> format;
  std::optional<std::string> out;
  Tolerances tolerances;
  VerifyTrials trials;
};

/// Parses a JSON document. Unknown keys, wrong types and malformed values
/// throw ConfigError.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Builds the library Hamiltonian spec once the spin count is known.
HamiltonianSpec to_spec(const HamiltonianSection& section, int spins);

}  // namespace mqspace::cli
