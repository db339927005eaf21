#include "swarmopt/trial_log.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "swarmopt/config.hpp"
#include "swarmopt/error.hpp"
#include "swarmopt/message.hpp"

namespace swarmopt {

using nlohmann::json;

TrialLog::TrialLog(const std::filesystem::path& path, const RunConfig& config) : path_(path) {
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::IoError, "cannot open log '" + path.string() + "' for writing");
  out_ << R"({"schema":1,"config":)" << config_to_json(config) << "}\n";
  flush();
}

void TrialLog::append(const TrialRecord& record) { out_ << trial_to_json(record) << '\n'; }

void TrialLog::flush() {
  out_.flush();
  if (!out_) throw Error(ErrorCode::IoError, "write to log '" + path_.string() + "' failed");
}

std::string trial_to_json(const TrialRecord& r) {
  std::string s = R"({"trial_id":)" + std::to_string(r.trial.trial_id);
  s += R"(,"agent_id":)" + std::to_string(r.trial.agent_id);
  s += R"(,"point":[)";
  for (std::size_t i = 0; i < r.trial.point.coords.size(); ++i) {
    if (i) s += ',';
    s += format_real(r.trial.point.coords[i]);
  }
  s += R"(],"value":)";
  s += std::isfinite(r.trial.value) ? format_real(r.trial.value) : std::string(R"("inf")");
  s += R"(,"eval_duration_s":)" + format_real(r.trial.eval_duration_s);
  s += R"(,"dispatched_at_s":)" + format_real(r.dispatched_at_s);
  s += R"(,"completed_at_s":)" + format_real(r.completed_at_s);
  s += R"(,"phase":)";
  s += r.phase == Phase::Initial ? R"("initial")" : R"("heuristic")";
  s += R"(,"batch":)" + std::to_string(r.batch) + '}';
  return s;
}

void write_log(const std::vector<TrialRecord>& trials, const std::filesystem::path& path, const RunConfig& config) {
  TrialLog log(path, config);
  for (const auto& t : trials) log.append(t);
  log.flush();
}

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedMessage, why); }

double real_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

}  // namespace

LogContents read_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read log '" + path.string() + "'");
  LogContents out;
  std::string line;
  if (!std::getline(in, line)) malformed("log has no header line");
  try {
    const auto header = json::parse(line);
    if (header.at("schema").get<int>() != 1) malformed("unsupported log schema");
    out.config_json = header.at("config").dump();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = json::parse(line);
      TrialRecord r;
      r.trial.trial_id = j.at("trial_id").get<std::uint64_t>();
      r.trial.agent_id = j.at("agent_id").get<std::size_t>();
      r.trial.point.coords = j.at("point").get<std::vector<double>>();
      r.trial.value = real_field(j, "value");
      r.trial.eval_duration_s = real_field(j, "eval_duration_s");
      r.trial.state = TrialState::Completed;
      r.dispatched_at_s = real_field(j, "dispatched_at_s");
      r.completed_at_s = real_field(j, "completed_at_s");
      r.phase = j.at("phase").get<std::string>() == "initial" ? Phase::Initial : Phase::Heuristic;
      r.batch = j.at("batch").get<std::size_t>();
      out.trials.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    malformed(std::string("bad log line: ") + e.what());
  }
  return out;
}

}  // namespace swarmopt
