#include "swarmopt_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swarmopt/message.hpp"

namespace swarmopt::cli {

namespace {

std::uint64_t parse_seed_env(const char* text) {
  const std::string_view s(text);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::InvalidConfig, std::string(kSeedEnv) + " must be a non-negative integer, got '" +
                                              std::string(s) + "'");
  }
  return seed;
}

std::string format_point(const Point& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) s += ',';
    s += format_real(p.coords[i]);
  }
  return s + "]";
}

std::string format_value(double v) { return std::isfinite(v) ? format_real(v) : "inf"; }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool is_config_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidSpace:
    case ErrorCode::UnknownObjective:
    case ErrorCode::ContinuousDimensionInGrid:
      return true;
    default:
      return false;
  }
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig cfg = load_config(path);
  if (const char* env = std::getenv(kSeedEnv); env != nullptr) cfg.seed = parse_seed_env(env);
  validate(cfg);
  return cfg;
}

std::string summary_line(const RunResult& r) {
  std::ostringstream s;
  s << "best_value=" << format_value(r.best_value) << " best_point=" << format_point(r.best_point)
    << " wall_time_s=" << format_real(r.wall_time_s) << " trials=" << r.trials.size();
  return s.str();
}

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = load_run_config(config);
    out << "ok: " << cfg.space.size() << " dimensions, " << cfg.num_agents << " agents, " << cfg.num_iter
        << " iterations\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int cmd_run(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  RunConfig cfg(bench::ackley_space(1));
  try {
    cfg = load_run_config(config);
  } catch (const Error& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    out << summary_line(run(cfg)) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "run aborted: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfigError : kExitRuntimeAbort;
  } catch (const std::exception& e) {
    err << "run aborted: " << e.what() << '\n';
    return kExitRuntimeAbort;
  }
}

std::filesystem::path summary_path(const std::filesystem::path& out_csv) {
  auto p = out_csv;
  p.replace_filename(out_csv.stem().string() + ".summary" + out_csv.extension().string());
  return p;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  if (o.agents.empty() || o.delays_s.empty() || o.repeats < 1) {
    err << "sweep needs at least one agent count, one delay and one repeat\n";
    return kExitConfigError;
  }
  RunConfig base(bench::ackley_space(1));
  try {
    base = load_run_config(o.config);
    for (auto a : o.agents) {
      if (a < 1) throw Error(ErrorCode::InvalidConfig, "agent counts must be >= 1");
    }
    for (double d : o.delays_s) {
      if (!std::isfinite(d) || d < 0) throw Error(ErrorCode::InvalidConfig, "delays must be finite and >= 0");
    }
  } catch (const Error& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::ofstream csv(o.out_csv);
  std::ofstream summary(summary_path(o.out_csv));
  if (!csv || !summary) {
    err << "cannot write '" << o.out_csv.string() << "'\n";
    return kExitRuntimeAbort;
  }
  csv << "agents,delay_s,repeat,seed,wall_time_s,best_value,status\n";
  summary << "agents,delay_s,runs_ok,median_wall_time_s,median_best_value\n";

  bool all_ok = true;
  for (auto agents : o.agents) {
    for (double delay : o.delays_s) {
      std::vector<double> walls, bests;
      for (std::size_t r = 0; r < o.repeats; ++r) {
        RunConfig cfg = base;
        cfg.num_agents = agents;
        cfg.num_ips = std::max(cfg.num_ips, agents);
        cfg.num_iter = std::max(cfg.num_iter, cfg.num_ips);
        cfg.seed = base.seed + r;
        cfg.objective.params["delay_s"] = delay;
        cfg.log_path.clear();
        csv << agents << ',' << format_real(delay) << ',' << r << ',' << cfg.seed << ',';
        try {
          const auto res = run(cfg);
          walls.push_back(res.wall_time_s);
          bests.push_back(res.best_value);
          csv << format_real(res.wall_time_s) << ',' << format_value(res.best_value) << ",ok\n";
        } catch (const Error& e) {
          all_ok = false;
          csv << ",," << to_string(e.code()) << '\n';
          err << "run agents=" << agents << " delay_s=" << delay << " repeat=" << r << " failed: " << e.what()
              << '\n';
        }
        csv.flush();
      }
      summary << agents << ',' << format_real(delay) << ',' << walls.size() << ',';
      if (walls.empty()) {
        summary << ",\n";
      } else {
        summary << format_real(median(walls)) << ',' << format_value(median(bests)) << '\n';
      }
    }
  }
  out << "wrote " << o.out_csv.string() << " and " << summary_path(o.out_csv).string() << '\n';
  return all_ok ? kExitOk : kExitRuntimeAbort;
}

int cmd_agent(const AgentOptions& o, std::ostream& out, std::ostream& err) {
  HostPort address;
  std::unique_ptr<Objective> objective;
  try {
    address = parse_address(o.connect);
    ObjectiveBinding binding{o.objective, o.params};
    SearchSpace space = bench::ackley_space(1);
    if (o.config) {
      space = load_config(*o.config).space;
    } else if (o.objective == "synthetic_satellite") {
      space = bench::satellite_space();
    } else if (o.objective == "synthetic_multimodal") {
      throw Error(ErrorCode::InvalidConfig, "'synthetic_multimodal' needs --config for its search space");
    }
    objective = bench::make_objective(binding, space, derive_seed(o.seed, o.id < 0 ? 0 : o.id));
  } catch (const Error& e) {
    err << "invalid agent options: " << e.what() << '\n';
    return kExitConfigError;
  }

  AgentEndpoints endpoints;
  try {
    endpoints = connect_agent(address, o.id);
  } catch (const Error& e) {
    err << "cannot connect to " << o.connect << ": " << e.what() << '\n';
    return kExitConnectionRefused;
  }
  try {
    serve_agent(*endpoints.inbox, *endpoints.outbox, *objective);
  } catch (const Error& e) {
    err << "agent aborted: " << e.what() << '\n';
    return kExitRuntimeAbort;
  }
  out << "shutdown received\n";
  return kExitOk;
}

}  // namespace swarmopt::cli
