#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swarmopt {

struct Candidate {
  std::uint64_t trial_id = 0;
  std::vector<double> coords;
  bool operator==(const Candidate&) const = default;
};

struct Result {
  std::uint64_t trial_id = 0;
  double value = 0.0;  // +inf encodes a failed evaluation
  double duration_s = 0.0;
  bool operator==(const Result&) const = default;
};

struct Shutdown {
  bool operator==(const Shutdown&) const = default;
};

/// First frame an agent sends over TCP, announcing its requested identity.
struct Hello {
  std::int64_t agent_id = 0;
  bool operator==(const Hello&) const = default;
};

using Message = std::variant<Candidate, Result, Shutdown, Hello>;

/// One JSON object on a single line, without the trailing newline.
/// Reals use the shortest representation that round-trips exactly.
std::string encode(const Message& msg);

/// Inverse of `encode`. Throws MalformedMessage on bad input.
Message decode(std::string_view line);

/// Shortest round-trip decimal form of a finite double, always with a '.' or exponent.
std::string format_real(double x);

/// Message bit-identity: doubles compared by bit pattern, so -0.0 != 0.0.
bool bit_identical(const Message& a, const Message& b);

}  // namespace swarmopt
