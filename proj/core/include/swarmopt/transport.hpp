#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "swarmopt/message.hpp"
#include "swarmopt/objective.hpp"

namespace swarmopt {

/// Transmitting end of a one-directional FIFO channel.
class OutPort {
 public:
  virtual ~OutPort() = default;
  /// Enqueues `msg`. Throws PortClosed if the peer is gone.
  virtual void send(const Message& msg) = 0;
};

/// Receiving end of a one-directional FIFO channel.
class InPort {
 public:
  virtual ~InPort() = default;
  /// True iff a message is ready. Never blocks, never consumes.
  /// Throws PortClosed once the peer is gone and the queue is drained.
  virtual bool probe() = 0;
  /// Oldest ready message; WouldBlock if none is ready.
  virtual Message recv() = 0;
  /// Blocks until a message arrives. Used by agents, never by the coordinator loop.
  virtual Message recv_wait() = 0;
};

/// Coordinator-side endpoints for one agent.
struct PortPair {
  std::size_t agent_id = 0;
  std::unique_ptr<OutPort> to_agent;
  std::unique_ptr<InPort> from_agent;
};

/// Agent-side endpoints.
struct AgentEndpoints {
  std::size_t agent_id = 0;
  std::unique_ptr<InPort> inbox;
  std::unique_ptr<OutPort> outbox;
};

inline constexpr std::size_t kChannelCapacity = 4;

/// In-process bounded FIFO. Receiving a Shutdown closes the channel for further sends.
std::pair<std::unique_ptr<OutPort>, std::unique_ptr<InPort>> make_channel(std::size_t capacity = kChannelCapacity);

/// Both directions for one agent over in-process channels.
std::pair<PortPair, AgentEndpoints> make_inprocess_link(std::size_t agent_id);

/// Agent loop: Candidate -> evaluate -> Result with measured duration, until Shutdown.
/// Evaluation exceptions and non-finite values come back as +inf.
void serve_agent(InPort& inbox, OutPort& outbox, Objective& objective);

struct TransportConfig {
  enum class Kind { InProcess, Tcp };
  Kind kind = Kind::InProcess;
  std::string listen = "127.0.0.1:0";  // TCP only; port 0 picks a free port
  bool spawn_local_agents = true;      // TCP only; false waits for external agents
  double accept_timeout_s = 60.0;

  bool operator==(const TransportConfig&) const = default;
};

struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};

/// Parses "host:port". Throws InvalidConfig.
HostPort parse_address(const std::string& address);

class TcpListener;

/// Running agents plus the coordinator's ports to them. Destruction shuts agents down.
class AgentPool {
 public:
  AgentPool();
  ~AgentPool();
  AgentPool(const AgentPool&) = delete;
  AgentPool& operator=(const AgentPool&) = delete;

  std::vector<PortPair>& ports() { return ports_; }
  std::size_t size() const { return ports_.size(); }

  /// Sends Shutdown to every agent and joins local agent threads. Idempotent.
  void shutdown();

  /// Bound TCP port, or 0 for in-process pools.
  std::uint16_t tcp_port() const;

 private:
  friend std::unique_ptr<AgentPool> spawn_agents(const std::function<std::unique_ptr<Objective>(std::size_t)>&,
                                                 std::size_t, const TransportConfig&);
  std::vector<PortPair> ports_;
  std::vector<std::thread> threads_;
  std::unique_ptr<TcpListener> listener_;
  bool shut_down_ = false;
};

using ObjectiveFactory = std::function<std::unique_ptr<Objective>(std::size_t agent_id)>;

/// Starts `num_agents` agents, each with its own objective from `factory`.
/// Throws AgentSpawnFailure.
std::unique_ptr<AgentPool> spawn_agents(const ObjectiveFactory& factory, std::size_t num_agents,
                                        const TransportConfig& transport);

// TCP framing: newline-delimited encode()/decode() frames.

/// Listening socket for agents connecting to the coordinator.
class TcpListener {
 public:
  explicit TcpListener(const HostPort& address);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accepts `n` agents and reads each hello. An agent keeps its requested id when it
  /// is in range and free, otherwise it gets the lowest free id. Result is sorted by id.
  std::vector<PortPair> accept_agents(std::size_t n, std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Connects to a coordinator and sends hello. Throws PortClosed if the connection fails.
AgentEndpoints connect_agent(const HostPort& address, std::int64_t requested_id);

/// Both ends of a connected loopback TCP socket pair, framed like the real transport.
/// The first element plays the coordinator side.
std::pair<PortPair, AgentEndpoints> make_tcp_loopback_link(std::size_t agent_id);

}  // namespace swarmopt
