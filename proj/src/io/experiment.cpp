#include "hdw/io/experiment.hpp"

#include <fstream>
#include <set>

#include "hdw/io/toml_lite.hpp"

namespace hdw::io {

namespace {

const std::set<std::string> kKeys{"scenario", "p", "n", "a", "q", "alpha",
                                   "reps", "methods", "B", "seed", "nu4", "unit_variance"};

const toml::Value* lookup(const toml::Table& exp, const toml::Table* defaults, const std::string& key) {
  if (exp.has(key)) return &exp.at(key);
  if (defaults && defaults->has(key)) return &defaults->at(key);
  return nullptr;
}

void check_keys(const toml::Table& t, const std::string& where) {
  for (const auto& [key, value] : t.values) {
    if (!kKeys.count(key)) throw ParameterError(where + ": unknown key '" + key + "'");
  }
  if (!t.tables.empty() || !t.arrays.empty()) throw ParameterError(where + ": nested tables are not allowed");
}

sim::MonteCarloConfig to_config(const toml::Table& exp, const toml::Table* defaults, std::size_t index) {
  const std::string where = "experiment " + std::to_string(index + 1);
  auto need = [&](const std::string& key) -> const toml::Value& {
    const toml::Value* v = lookup(exp, defaults, key);
    if (!v) throw ParameterError(where + ": missing required key '" + key + "'");
    return *v;
  };
  sim::MonteCarloConfig cfg;
  try {
    cfg.scenario.scenario = sim::parse_scenario(need("scenario").as_string());
    cfg.scenario.p = need("p").as_int();
    cfg.scenario.n = need("n").as_int();
    if (const auto* v = lookup(exp, defaults, "a")) cfg.scenario.a = v->as_double();
    if (const auto* v = lookup(exp, defaults, "unit_variance")) cfg.scenario.unit_variance = v->as_bool();
    if (const auto* v = lookup(exp, defaults, "q")) cfg.q = v->as_int();
    if (const auto* v = lookup(exp, defaults, "alpha")) cfg.alpha = v->as_double();
    if (const auto* v = lookup(exp, defaults, "reps")) cfg.reps = static_cast<int>(v->as_int());
    if (const auto* v = lookup(exp, defaults, "B")) cfg.B = static_cast<int>(v->as_int());
    if (const auto* v = lookup(exp, defaults, "seed")) cfg.base_seed = static_cast<std::uint64_t>(v->as_int());
    if (const auto* v = lookup(exp, defaults, "nu4")) cfg.nu4 = v->as_double();
    if (const auto* v = lookup(exp, defaults, "methods")) {
      if (v->type != toml::Value::Type::array) throw ParameterError("'methods' must be an array of strings");
      cfg.methods.clear();
      for (const auto& m : v->array) cfg.methods.push_back(sim::parse_method(m.as_string()));
    }
    cfg.validate();
  } catch (const ParameterError& e) {
    throw ParameterError(where + ": " + e.what());
  }
  return cfg;
}

}  // namespace

std::vector<sim::MonteCarloConfig> parse_experiment(std::istream& in) {
  const toml::Table root = toml::parse(in);
  if (!root.has("schema")) throw ParameterError("experiment file lacks 'schema'");
  if (root.at("schema").as_int() != kExperimentSchema) {
    throw ParameterError("unsupported experiment schema " + std::to_string(root.at("schema").as_int()));
  }
  for (const auto& [key, value] : root.values) {
    if (key != "schema") throw ParameterError("unknown top-level key '" + key + "'");
  }
  const toml::Table* defaults = nullptr;
  for (const auto& [name, table] : root.tables) {
    if (name != "defaults") throw ParameterError("unknown table [" + name + "]");
    check_keys(table, "[defaults]");
    defaults = &table;
  }
  for (const auto& [name, arr] : root.arrays) {
    if (name != "experiment") throw ParameterError("unknown table array [[" + name + "]]");
  }
  const auto it = root.arrays.find("experiment");
  if (it == root.arrays.end() || it->second.empty()) throw ParameterError("no [[experiment]] entries");
  std::vector<sim::MonteCarloConfig> configs;
  for (std::size_t i = 0; i < it->second.size(); ++i) {
    check_keys(it->second[i], "experiment " + std::to_string(i + 1));
    configs.push_back(to_config(it->second[i], defaults, i));
  }
  return configs;
}

std::vector<sim::MonteCarloConfig> load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open experiment file '" + path + "'");
  return parse_experiment(in);
}

sim::ResultTable run_experiment(const std::vector<sim::MonteCarloConfig>& configs, const sim::RunOptions& opt) {
  sim::ResultTable table;
  for (const auto& cfg : configs) table.append(sim::run_size_power(cfg, opt));
  return table;
}

}  // namespace hdw::io
