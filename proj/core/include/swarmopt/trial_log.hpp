#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "swarmopt/strategy.hpp"

namespace swarmopt {

struct RunConfig;

enum class Phase { Initial, Heuristic };

/// A completed trial plus coordinator-side timing. Timestamps are seconds since run start.
struct TrialRecord {
  Trial trial;
  double dispatched_at_s = 0.0;
  double completed_at_s = 0.0;
  Phase phase = Phase::Initial;
  std::size_t batch = 0;  // 0 for the initial phase, heuristic batches count from 1
};

/// JSONL run log: a `{"schema":1,"config":{...}}` header, then one object per trial.
class TrialLog {
 public:
  /// Truncates `path` and writes the header. Throws IoError.
  TrialLog(const std::filesystem::path& path, const RunConfig& config);

  void append(const TrialRecord& record);
  /// Throws IoError if the stream went bad.
  void flush();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// One log line for `record`, without the newline.
std::string trial_to_json(const TrialRecord& record);

/// Writes a complete log in one go.
void write_log(const std::vector<TrialRecord>& trials, const std::filesystem::path& path, const RunConfig& config);

struct LogContents {
  std::string config_json;
  std::vector<TrialRecord> trials;
};

/// Parses a log written by TrialLog. Throws IoError or MalformedMessage.
LogContents read_log(const std::filesystem::path& path);

}  // namespace swarmopt
