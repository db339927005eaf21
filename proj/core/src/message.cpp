#include "swarmopt/message.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "swarmopt/error.hpp"

namespace swarmopt {

using nlohmann::json;

std::string format_real(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void append_real_array(std::string& out, const std::vector<double>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_real(xs[i]);
  }
  out += ']';
}

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedMessage, why); }

std::uint64_t read_trial_id(const json& j) {
  const auto it = j.find("trial_id");
  if (it == j.end() || !it->is_number_unsigned()) {
    malformed("trial_id must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

double read_real(const json& j, const char* key, bool allow_inf) {
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing '") + key + "'");
  if (allow_inf && it->is_string() && it->get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!it->is_number()) malformed(std::string("'") + key + "' must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) malformed(std::string("'") + key + "' must be finite");
  return v;
}

}  // namespace

std::string encode(const Message& msg) {
  std::string out;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Candidate>) {
          out = R"({"type":"candidate","trial_id":)" + std::to_string(m.trial_id) + R"(,"coords":)";
          append_real_array(out, m.coords);
          out += '}';
        } else if constexpr (std::is_same_v<M, Result>) {
          out = R"({"type":"result","trial_id":)" + std::to_string(m.trial_id) + R"(,"value":)";
          out += std::isfinite(m.value) ? format_real(m.value) : std::string(R"("inf")");
          out += R"(,"duration_s":)" + format_real(m.duration_s) + '}';
        } else if constexpr (std::is_same_v<M, Shutdown>) {
          out = R"({"type":"shutdown"})";
        } else {
          out = R"({"type":"hello","agent_id":)" + std::to_string(m.agent_id) + '}';
        }
      },
      msg);
  return out;
}

Message decode(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!j.is_object()) malformed("frame is not a JSON object");
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) malformed("missing 'type'");
  const auto type = type_it->get<std::string>();

  if (type == "candidate") {
    Candidate c;
    c.trial_id = read_trial_id(j);
    const auto it = j.find("coords");
    if (it == j.end() || !it->is_array()) malformed("'coords' must be an array");
    c.coords.reserve(it->size());
    for (const auto& v : *it) {
      if (!v.is_number()) malformed("coords must be numbers");
      const double x = v.get<double>();
      if (!std::isfinite(x)) malformed("coords must be finite");
      c.coords.push_back(x);
    }
    return c;
  }
  if (type == "result") {
    Result r;
    r.trial_id = read_trial_id(j);
    r.value = read_real(j, "value", true);
    r.duration_s = read_real(j, "duration_s", false);
    return r;
  }
  if (type == "shutdown") return Shutdown{};
  if (type == "hello") {
    const auto it = j.find("agent_id");
    if (it == j.end() || !it->is_number_integer()) malformed("'agent_id' must be an integer");
    return Hello{it->get<std::int64_t>()};
  }
  malformed("unknown message type '" + type + "'");
}

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

bool bit_identical(const Message& a, const Message& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ca = std::get_if<Candidate>(&a)) {
    const auto& cb = std::get<Candidate>(b);
    if (ca->trial_id != cb.trial_id || ca->coords.size() != cb.coords.size()) return false;
    for (std::size_t i = 0; i < ca->coords.size(); ++i) {
      if (!same_bits(ca->coords[i], cb.coords[i])) return false;
    }
    return true;
  }
  if (const auto* ra = std::get_if<Result>(&a)) {
    const auto& rb = std::get<Result>(b);
    return ra->trial_id == rb.trial_id && same_bits(ra->value, rb.value) && same_bits(ra->duration_s, rb.duration_s);
  }
  return a == b;
}

}  // namespace swarmopt
