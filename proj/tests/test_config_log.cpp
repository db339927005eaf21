#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "swarmopt/config.hpp"
#include "swarmopt/trial_log.hpp"

namespace swarmopt {
namespace {

constexpr const char* kSatelliteConfig = R"({
  "space": [
    {"name": "turning_rate", "type": "discrete", "lo": 1.0, "hi": 3.0, "step": 0.25},
    {"name": "view_height", "type": "discrete", "values": [0.25, 0.5, 0.75, 1.0, 1.25, 1.5]},
    {"name": "num_satellites", "type": "discrete", "lo": 2, "hi": 6, "step": 1}
  ],
  "strategy": {"kind": "bayesian", "acquisition": {"kind": "lcb", "kappa": 2.5}, "lie": "mean"},
  "num_agents": 5,
  "num_ips": 10,
  "num_iter": 40,
  "seed": 7,
  "transport": {"kind": "tcp", "listen": "127.0.0.1:0"},
  "objective": {"name": "synthetic_satellite", "params": {"delay_s": 0.0}}
})";

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("swarmopt_test_" + name);
}

void expect_invalid(const std::string& text, const std::string& needle) {
  try {
    validate(parse_config(text));
    FAIL() << "accepted config";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

std::string with(const std::string& from, const std::string& to) {
  std::string s = kSatelliteConfig;
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

TEST(Config, ParsesFullGrammar) {
  const auto cfg = parse_config(kSatelliteConfig);
  EXPECT_EQ(cfg.space.size(), 3u);
  EXPECT_EQ(cfg.space.grid_size(), 270u);
  const auto& b = std::get<BayesianSearch>(cfg.strategy);
  EXPECT_EQ(b.acquisition.kind, acquisition::Kind::LowerConfidenceBound);
  EXPECT_EQ(b.acquisition.kappa, 2.5);
  EXPECT_EQ(b.lie, acquisition::LieStrategy::ConstantLiarMean);
  EXPECT_EQ(cfg.num_agents, 5u);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.transport.kind, TransportConfig::Kind::Tcp);
  EXPECT_EQ(cfg.objective.name, "synthetic_satellite");
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, JsonRoundTrip) {
  const auto cfg = parse_config(kSatelliteConfig);
  EXPECT_EQ(parse_config(config_to_json(cfg)), cfg);
}

TEST(Config, BoundsNameTheViolation) {
  expect_invalid(with(R"("num_iter": 40)", R"("num_iter": 5)"), "num_iter (5) must be >= num_ips (10)");
  expect_invalid(with(R"("num_ips": 10)", R"("num_ips": 3)"), "num_ips (3) must be >= num_agents (5)");
  expect_invalid(with(R"("num_agents": 5)", R"("num_agents": 0)"), "num_agents");
}

TEST(Config, RejectsBadShapes) {
  expect_invalid("{", "JSON");
  expect_invalid(with(R"("kind": "bayesian")", R"("kind": "annealing")"), "annealing");
  expect_invalid(with(R"("kind": "tcp")", R"("kind": "udp")"), "udp");
  expect_invalid(with(R"("num_agents": 5)", R"("num_agents": -5)"), "num_agents");
  expect_invalid(with(R"("values": [0.25, 0.5, 0.75, 1.0, 1.25, 1.5])", R"("values": [])"), "view_height");
  expect_invalid(with(R"("name": "synthetic_satellite")", R"("name": "mystery")"), "mystery");
  expect_invalid(with(R"("listen": "127.0.0.1:0")", R"("listen": "nowhere")"), "nowhere");
}

TEST(Config, GridSearchNeedsSmallEnoughDiscreteSpace) {
  auto grid = with(R"("num_iter": 40)", R"("num_iter": 271)");
  const std::string bayes = R"({"kind": "bayesian", "acquisition": {"kind": "lcb", "kappa": 2.5}, "lie": "mean"})";
  grid.replace(grid.find(bayes), bayes.size(), R"({"kind": "grid"})");
  expect_invalid(grid, "grid size (270)");
  const std::string continuous = R"({"space":[{"name":"x","type":"continuous","lo":0,"hi":1}],
    "strategy":{"kind":"grid"},"num_agents":1,"num_ips":1,"num_iter":1,"objective":{"name":"ackley"}})";
  expect_invalid(continuous, "discrete");
}

TEST(Config, LoadFromFile) {
  const auto path = temp_path("cfg.json");
  {
    std::ofstream(path) << kSatelliteConfig;
  }
  EXPECT_EQ(load_config(path), parse_config(kSatelliteConfig));
  std::filesystem::remove(path);
  try {
    load_config(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(TrialLog, WriteReadRoundTrip) {
  const auto cfg = parse_config(kSatelliteConfig);
  std::vector<TrialRecord> trials;
  for (std::uint64_t i = 0; i < 4; ++i) {
    TrialRecord r;
    r.trial = Trial{i, Point{{1.0 + 0.25 * i, 0.5, 3.0}}, i == 2 ? INFINITY : 0.1 * i, 0.01, i % 2,
                    TrialState::Completed};
    r.dispatched_at_s = 0.5 * i;
    r.completed_at_s = 0.5 * i + 0.1;
    r.phase = i < 2 ? Phase::Initial : Phase::Heuristic;
    r.batch = i < 2 ? 0 : 1;
    trials.push_back(r);
  }
  const auto path = temp_path("log.jsonl");
  write_log(trials, path, cfg);
  const auto back = read_log(path);
  EXPECT_EQ(parse_config(back.config_json), cfg);
  ASSERT_EQ(back.trials.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(trial_to_json(back.trials[i]), trial_to_json(trials[i]));
    EXPECT_EQ(back.trials[i].trial.point, trials[i].trial.point);
    EXPECT_EQ(back.trials[i].phase, trials[i].phase);
  }
  EXPECT_EQ(back.trials[2].trial.value, INFINITY);
  std::filesystem::remove(path);
}

TEST(TrialLog, UnwritablePathIsIoError) {
  const auto cfg = parse_config(kSatelliteConfig);
  try {
    TrialLog log("/nonexistent-dir/for/sure/log.jsonl", cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

}  // namespace
}  // namespace swarmopt
