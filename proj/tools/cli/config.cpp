#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mqspace/base_operator.hpp"
#include "mqspace/error.hpp"

namespace mqspace::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("bad_config", path + ": " + what);
}

void allow_keys(const json& object, const std::string& path, std::initializer_list<const char*> keys) {
  if (!object.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : object.items()) {
    if (allowed.count(item.key()) == 0) throw ConfigError("unknown_key", path + ": unknown key '" + item.key() + "'");
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t count(const json& v, const std::string& path) {
  const std::int64_t i = integer(v, path);
  if (i < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::string choice(const json& v, const std::string& path, std::initializer_list<const char*> options) {
  const std::string s = text(v, path);
  for (const char* o : options) {
    if (s == o) return s;
  }
  fail(path, "unsupported value '" + s + "'");
}

int spin_index(const json& v, const std::string& path) {
  const std::int64_t i = integer(v, path);
  if (i < 1 || i > 64) throw ConfigError("spin_index", path + ": spin index " + std::to_string(i) + " out of range");
  return static_cast<int>(i);
}

HamiltonianSection parse_hamiltonian(const json& h) {
  allow_keys(h, "hamiltonian", {"model", "couplings", "offsets", "custom"});
  HamiltonianSection out;
  if (h.contains("model")) out.model = parse_hamiltonian_model(text(h["model"], "hamiltonian.model"));
  if (h.contains("couplings")) {
    const json& list = h["couplings"];
    if (!list.is_array()) fail("hamiltonian.couplings", "expected an array of [k, l, J]");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "hamiltonian.couplings[" + std::to_string(i) + "]";
      if (!list[i].is_array() || list[i].size() != 3) fail(path, "expected [k, l, J]");
      out.couplings.push_back({spin_index(list[i][0], path), spin_index(list[i][1], path), number(list[i][2], path)});
    }
  }
  if (h.contains("offsets")) {
    const json& list = h["offsets"];
    if (!list.is_array()) fail("hamiltonian.offsets", "expected an array of [k, omega]");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "hamiltonian.offsets[" + std::to_string(i) + "]";
      if (!list[i].is_array() || list[i].size() != 2) fail(path, "expected [k, omega]");
      out.offsets.push_back({spin_index(list[i][0], path), number(list[i][1], path)});
    }
  }
  if (h.contains("custom")) {
    const json& terms = h["custom"];
    if (!terms.is_object()) fail("hamiltonian.custom", "expected an object of label: coefficient");
    for (const auto& item : terms.items()) {
      const std::string path = "hamiltonian.custom." + item.key();
      const json& c = item.value();
      if (c.is_array()) {
        if (c.size() != 2) fail(path, "expected [re, im]");
        out.custom.emplace_back(item.key(), Complex(number(c[0], path), number(c[1], path)));
      } else {
        out.custom.emplace_back(item.key(), Complex(number(c, path), 0.0));
      }
    }
  }
  if (out.model == HamiltonianModel::Custom && out.custom.empty()) {
    fail("hamiltonian.custom", "the custom model needs at least one term");
  }
  if (out.model != HamiltonianModel::Custom && !out.custom.empty()) {
    fail("hamiltonian.custom", "custom terms are only allowed with model \"custom\"");
  }
  return out;
}

TimeGrid parse_times(const json& t) {
  TimeGrid grid;
  if (t.is_array()) {
    for (std::size_t i = 0; i < t.size(); ++i) grid.explicit_times.push_back(number(t[i], "times[" + std::to_string(i) + "]"));
    if (grid.explicit_times.empty()) fail("times", "empty time list");
    return grid;
  }
  allow_keys(t, "times", {"start", "end", "steps"});
  for (const char* key : {"start", "end", "steps"}) {
    if (!t.contains(key)) fail("times", std::string("missing '") + key + "'");
  }
  grid.start = number(t["start"], "times.start");
  grid.end = number(t["end"], "times.end");
  grid.steps = count(t["steps"], "times.steps");
  return grid;
}

}  // namespace

RunConfig parse_config(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError("bad_json", e.what());
  }
  allow_keys(root, "config",
             {"n", "seed", "hamiltonian", "initial", "times", "purge", "track", "engine", "basis", "output",
              "tolerances", "trials"});
  RunConfig c;
  if (root.contains("n")) {
    const std::int64_t n = integer(root["n"], "n");
    if (n < 1 || n > 64) throw ConfigError("spin_count", "n = " + std::to_string(n) + " is out of range");
    c.n = static_cast<int>(n);
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("hamiltonian")) c.hamiltonian = parse_hamiltonian(root["hamiltonian"]);
  if (root.contains("initial")) c.initial = text(root["initial"], "initial");
  if (root.contains("times")) c.times = parse_times(root["times"]);
  if (root.contains("purge")) {
    if (!root["purge"].is_boolean()) fail("purge", "expected true or false");
    c.purge = root["purge"].get<bool>();
  }
  if (root.contains("track")) {
    const json& t = root["track"];
    if (t.is_string()) {
      if (t.get<std::string>() != "all") fail("track", "expected \"all\" or a list of labels");
      c.track = std::optional<std::vector<std::string>>{};
    } else if (t.is_array()) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < t.size(); ++i) labels.push_back(text(t[i], "track[" + std::to_string(i) + "]"));
      c.track = std::optional<std::vector<std::string>>{std::move(labels)};
    } else {
      fail("track", "expected \"all\" or a list of labels");
    }
  }
  if (root.contains("engine")) c.engine = choice(root["engine"], "engine", {"full", "blockwise", "both"});
  if (root.contains("basis")) c.basis = choice(root["basis"], "basis", {"cartesian", "shift"});
  if (root.contains("output")) {
    const json& o = root["output"];
    allow_keys(o, "output", {"format", "path"});
    if (o.contains("format")) c.format = choice(o["format"], "output.format", {"csv", "json"});
    if (o.contains("path")) c.out = text(o["path"], "output.path");
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    allow_keys(t, "tolerances", {"engine_agreement", "verify"});
    auto positive = [&](const char* key) {
      const double v = number(t[key], std::string("tolerances.") + key);
      if (v <= 0.0) fail(std::string("tolerances.") + key, "expected a positive number");
      return v;
    };
    if (t.contains("engine_agreement")) c.tolerances.engine_agreement = positive("engine_agreement");
    if (t.contains("verify")) c.tolerances.verify = positive("verify");
  }
  if (root.contains("trials")) {
    const json& t = root["trials"];
    allow_keys(t, "trials", {"closure", "order", "extreme"});
    if (t.contains("closure")) c.trials.closure = count(t["closure"], "trials.closure");
    if (t.contains("order")) c.trials.order = count(t["order"], "trials.order");
    if (t.contains("extreme")) c.trials.extreme = count(t["extreme"], "trials.extreme");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config_unreadable", "cannot read config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

HamiltonianSpec to_spec(const HamiltonianSection& section, int spins) {
  HamiltonianSpec spec;
  spec.model = section.model;
  spec.couplings = section.couplings;
  spec.offsets = section.offsets;
  for (const auto& [label, value] : section.custom) {
    spec.custom.terms.push_back(ExpansionTerm{BaseOperatorSpec::parse(label, spins), value});
  }
  return spec;
}

}  // namespace mqspace::cli
