#include "swarmopt/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarmopt/error.hpp"

namespace swarmopt {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); }

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double as_real(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string("'") + what + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string("'") + what + "' must be a string");
  return j.get<std::string>();
}

Dimension parse_dimension(const json& j) {
  if (!j.is_object()) bad("each space entry must be an object");
  const auto name = as_string(require(j, "name"), "name");
  const auto type = as_string(require(j, "type"), "type");
  if (type == "continuous") {
    return Dimension::continuous(name, as_real(require(j, "lo"), "lo"), as_real(require(j, "hi"), "hi"));
  }
  if (type != "discrete") bad("dimension '" + name + "' has unknown type '" + type + "'");
  if (j.contains("values")) {
    const auto& vs = j.at("values");
    if (!vs.is_array()) bad("'values' must be an array");
    std::vector<double> values;
    for (const auto& v : vs) values.push_back(as_real(v, "values"));
    return Dimension::discrete(name, std::move(values));
  }
  return Dimension::stepped(name, as_real(require(j, "lo"), "lo"), as_real(require(j, "hi"), "hi"),
                            as_real(require(j, "step"), "step"));
}

StrategyKind parse_strategy(const json& j) {
  if (!j.is_object()) bad("'strategy' must be an object");
  const auto kind = as_string(require(j, "kind"), "strategy.kind");
  if (kind == "random") return RandomSearch{};
  if (kind == "grid") return GridSearch{};
  if (kind != "bayesian") bad("unknown strategy kind '" + kind + "'");

  BayesianSearch b;
  if (const auto it = j.find("acquisition"); it != j.end()) {
    if (!it->is_object()) bad("'acquisition' must be an object");
    const auto akind = as_string(require(*it, "kind"), "acquisition.kind");
    if (akind == "ei") {
      b.acquisition.kind = acquisition::Kind::ExpectedImprovement;
    } else if (akind == "lcb") {
      b.acquisition.kind = acquisition::Kind::LowerConfidenceBound;
    } else {
      bad("unknown acquisition kind '" + akind + "'");
    }
    if (it->contains("xi")) b.acquisition.xi = as_real(it->at("xi"), "xi");
    if (it->contains("kappa")) b.acquisition.kappa = as_real(it->at("kappa"), "kappa");
  }
  if (const auto it = j.find("lie"); it != j.end()) {
    const auto lie = as_string(*it, "lie");
    if (lie == "min") {
      b.lie = acquisition::LieStrategy::ConstantLiarMin;
    } else if (lie == "max") {
      b.lie = acquisition::LieStrategy::ConstantLiarMax;
    } else if (lie == "mean") {
      b.lie = acquisition::LieStrategy::ConstantLiarMean;
    } else {
      bad("unknown lie strategy '" + lie + "'");
    }
  }
  return b;
}

TransportConfig parse_transport(const json& j) {
  if (!j.is_object()) bad("'transport' must be an object");
  TransportConfig t;
  const auto kind = as_string(require(j, "kind"), "transport.kind");
  if (kind == "in_process") {
    t.kind = TransportConfig::Kind::InProcess;
  } else if (kind == "tcp") {
    t.kind = TransportConfig::Kind::Tcp;
    if (j.contains("listen")) t.listen = as_string(j.at("listen"), "listen");
    if (j.contains("spawn_local_agents")) {
      if (!j.at("spawn_local_agents").is_boolean()) bad("'spawn_local_agents' must be a boolean");
      t.spawn_local_agents = j.at("spawn_local_agents").get<bool>();
    }
    if (j.contains("accept_timeout_s")) t.accept_timeout_s = as_real(j.at("accept_timeout_s"), "accept_timeout_s");
  } else {
    bad("unknown transport kind '" + kind + "'");
  }
  return t;
}

ObjectiveBinding parse_objective(const json& j) {
  if (!j.is_object()) bad("'objective' must be an object");
  ObjectiveBinding o;
  o.name = as_string(require(j, "name"), "objective.name");
  if (const auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) bad("'params' must be an object");
    for (const auto& [key, value] : it->items()) o.params[key] = as_real(value, key.c_str());
  }
  return o;
}

json dimension_json(const Dimension& d) {
  if (d.is_discrete()) return {{"name", d.name()}, {"type", "discrete"}, {"values", d.as_discrete().values}};
  return {{"name", d.name()}, {"type", "continuous"}, {"lo", d.as_continuous().lo}, {"hi", d.as_continuous().hi}};
}

json strategy_json(const StrategyKind& kind) {
  if (std::holds_alternative<RandomSearch>(kind)) return {{"kind", "random"}};
  if (std::holds_alternative<GridSearch>(kind)) return {{"kind", "grid"}};
  const auto& b = std::get<BayesianSearch>(kind);
  const char* lie = b.lie == acquisition::LieStrategy::ConstantLiarMin   ? "min"
                    : b.lie == acquisition::LieStrategy::ConstantLiarMax ? "max"
                                                                         : "mean";
  return {{"kind", "bayesian"},
          {"acquisition",
           {{"kind", b.acquisition.kind == acquisition::Kind::ExpectedImprovement ? "ei" : "lcb"},
            {"xi", b.acquisition.xi},
            {"kappa", b.acquisition.kappa}}},
          {"lie", lie}};
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");

  const auto& space_json = require(j, "space");
  if (!space_json.is_array()) bad("'space' must be an array");
  std::vector<Dimension> dims;
  try {
    for (const auto& d : space_json) dims.push_back(parse_dimension(d));
    RunConfig cfg(SearchSpace(std::move(dims)));
    cfg.strategy = parse_strategy(require(j, "strategy"));
    cfg.num_agents = as_count(require(j, "num_agents"), "num_agents");
    cfg.num_ips = as_count(require(j, "num_ips"), "num_ips");
    cfg.num_iter = as_count(require(j, "num_iter"), "num_iter");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) bad("'seed' must be a non-negative integer");
      cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("transport")) cfg.transport = parse_transport(j.at("transport"));
    cfg.objective = parse_objective(require(j, "objective"));
    if (j.contains("log_path")) cfg.log_path = as_string(j.at("log_path"), "log_path");
    return cfg;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidSpace) bad(e.what());
    throw;
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json space = json::array();
  for (const auto& d : cfg.space.dims()) space.push_back(dimension_json(d));
  json transport = {{"kind", cfg.transport.kind == TransportConfig::Kind::Tcp ? "tcp" : "in_process"}};
  if (cfg.transport.kind == TransportConfig::Kind::Tcp) {
    transport["listen"] = cfg.transport.listen;
    transport["spawn_local_agents"] = cfg.transport.spawn_local_agents;
    transport["accept_timeout_s"] = cfg.transport.accept_timeout_s;
  }
  json params = json::object();
  for (const auto& [k, v] : cfg.objective.params) params[k] = v;
  const json j = {
      {"space", space},
      {"strategy", strategy_json(cfg.strategy)},
      {"num_agents", cfg.num_agents},
      {"num_ips", cfg.num_ips},
      {"num_iter", cfg.num_iter},
      {"seed", cfg.seed},
      {"transport", transport},
      {"objective", {{"name", cfg.objective.name}, {"params", params}}},
      {"log_path", cfg.log_path},
  };
  return j.dump();
}

void validate(const RunConfig& cfg) {
  if (cfg.num_agents < 1) bad("num_agents must be >= 1");
  if (cfg.num_ips < cfg.num_agents) {
    bad("num_ips (" + std::to_string(cfg.num_ips) + ") must be >= num_agents (" + std::to_string(cfg.num_agents) +
        ")");
  }
  if (cfg.num_iter < cfg.num_ips) {
    bad("num_iter (" + std::to_string(cfg.num_iter) + ") must be >= num_ips (" + std::to_string(cfg.num_ips) + ")");
  }
  if (std::holds_alternative<GridSearch>(cfg.strategy)) {
    if (!cfg.space.all_discrete()) bad("grid search requires every dimension to be discrete");
    const auto cells = cfg.space.grid_size();
    if (cfg.num_iter > cells) {
      bad("num_iter (" + std::to_string(cfg.num_iter) + ") exceeds the grid size (" + std::to_string(cells) + ")");
    }
  }
  if (const auto* b = std::get_if<BayesianSearch>(&cfg.strategy)) acquisition::validate(b->acquisition);
  if (cfg.transport.kind == TransportConfig::Kind::Tcp) {
    parse_address(cfg.transport.listen);
    if (!(cfg.transport.accept_timeout_s > 0)) bad("accept_timeout_s must be positive");
  }
  try {
    bench::validate(cfg.objective, cfg.space);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownObjective) bad(e.what());
    throw;
  }
}

}  // namespace swarmopt
