#include "swarmopt/transport.hpp"

#include <cmath>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>

#include "swarmopt/error.hpp"

namespace swarmopt {

namespace {

struct ChannelState {
  explicit ChannelState(std::size_t cap) : capacity(cap) {}

  std::mutex mu;
  std::condition_variable cv;
  std::deque<Message> queue;
  std::size_t capacity;
  bool sender_closed = false;
  bool receiver_closed = false;
};

class ChannelOut final : public OutPort {
 public:
  explicit ChannelOut(std::shared_ptr<ChannelState> s) : s_(std::move(s)) {}
  ~ChannelOut() override {
    {
      std::lock_guard lock(s_->mu);
      s_->sender_closed = true;
    }
    s_->cv.notify_all();
  }

  void send(const Message& msg) override {
    {
      std::unique_lock lock(s_->mu);
      s_->cv.wait(lock, [&] { return s_->receiver_closed || s_->queue.size() < s_->capacity; });
      if (s_->receiver_closed) throw Error(ErrorCode::PortClosed, "receiver is closed");
      s_->queue.push_back(msg);
    }
    s_->cv.notify_all();
  }

 private:
  std::shared_ptr<ChannelState> s_;
};

class ChannelIn final : public InPort {
 public:
  explicit ChannelIn(std::shared_ptr<ChannelState> s) : s_(std::move(s)) {}
  ~ChannelIn() override {
    {
      std::lock_guard lock(s_->mu);
      s_->receiver_closed = true;
    }
    s_->cv.notify_all();
  }

  bool probe() override {
    std::lock_guard lock(s_->mu);
    check_open();
    if (!s_->queue.empty()) return true;
    if (s_->sender_closed) throw Error(ErrorCode::PortClosed, "sender is closed");
    return false;
  }

  Message recv() override {
    std::unique_lock lock(s_->mu);
    check_open();
    if (s_->queue.empty()) {
      if (s_->sender_closed) throw Error(ErrorCode::PortClosed, "sender is closed");
      throw Error(ErrorCode::WouldBlock, "recv without a ready message");
    }
    return pop(lock);
  }

  Message recv_wait() override {
    std::unique_lock lock(s_->mu);
    check_open();
    s_->cv.wait(lock, [&] { return !s_->queue.empty() || s_->sender_closed; });
    if (s_->queue.empty()) throw Error(ErrorCode::PortClosed, "sender is closed");
    return pop(lock);
  }

 private:
  void check_open() const {
    if (s_->receiver_closed) throw Error(ErrorCode::PortClosed, "port already received Shutdown");
  }

  Message pop(std::unique_lock<std::mutex>& lock) {
    Message msg = std::move(s_->queue.front());
    s_->queue.pop_front();
    if (std::holds_alternative<Shutdown>(msg)) s_->receiver_closed = true;
    lock.unlock();
    s_->cv.notify_all();
    return msg;
  }

  std::shared_ptr<ChannelState> s_;
};

}  // namespace

std::pair<std::unique_ptr<OutPort>, std::unique_ptr<InPort>> make_channel(std::size_t capacity) {
  if (capacity == 0) throw Error(ErrorCode::InvalidConfig, "channel capacity must be positive");
  auto state = std::make_shared<ChannelState>(capacity);
  return {std::make_unique<ChannelOut>(state), std::make_unique<ChannelIn>(state)};
}

std::pair<PortPair, AgentEndpoints> make_inprocess_link(std::size_t agent_id) {
  auto [to_agent, agent_inbox] = make_channel();
  auto [agent_outbox, from_agent] = make_channel();
  return {PortPair{agent_id, std::move(to_agent), std::move(from_agent)},
          AgentEndpoints{agent_id, std::move(agent_inbox), std::move(agent_outbox)}};
}

void serve_agent(InPort& inbox, OutPort& outbox, Objective& objective) {
  for (;;) {
    Message msg = inbox.recv_wait();
    if (std::holds_alternative<Shutdown>(msg)) return;
    const auto* candidate = std::get_if<Candidate>(&msg);
    if (candidate == nullptr) throw Error(ErrorCode::ProtocolViolation, "agent expected a candidate");

    const auto start = std::chrono::steady_clock::now();
    double value;
    try {
      value = objective.evaluate(Point{candidate->coords});
    } catch (const std::exception&) {
      value = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outbox.send(Result{candidate->trial_id, value, elapsed});
  }
}

AgentPool::AgentPool() = default;

AgentPool::~AgentPool() { shutdown(); }

std::uint16_t AgentPool::tcp_port() const { return listener_ ? listener_->port() : 0; }

void AgentPool::shutdown() {
  if (shut_down_) return;
  shut_down_ = true;
  for (auto& port : ports_) {
    try {
      port.to_agent->send(Shutdown{});
    } catch (const Error&) {
      // agent already gone
    }
  }
  for (auto& t : threads_) {
    if (t.joinable()) t.join();
  }
  threads_.clear();
}

namespace {

void run_local_agent(AgentEndpoints endpoints, std::unique_ptr<Objective> objective) {
  try {
    serve_agent(*endpoints.inbox, *endpoints.outbox, *objective);
  } catch (const Error&) {
    // Coordinator went away; the endpoints close on scope exit.
  }
}

}  // namespace

std::unique_ptr<AgentPool> spawn_agents(const ObjectiveFactory& factory, std::size_t num_agents,
                                        const TransportConfig& transport) {
  if (num_agents == 0) throw Error(ErrorCode::AgentSpawnFailure, "at least one agent is required");

  std::vector<std::unique_ptr<Objective>> objectives;
  objectives.reserve(num_agents);
  try {
    for (std::size_t i = 0; i < num_agents; ++i) objectives.push_back(factory(i));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::AgentSpawnFailure, e.what());
  }

  auto pool = std::make_unique<AgentPool>();
  if (transport.kind == TransportConfig::Kind::InProcess) {
    for (std::size_t i = 0; i < num_agents; ++i) {
      auto [coordinator_side, agent_side] = make_inprocess_link(i);
      pool->ports_.push_back(std::move(coordinator_side));
      pool->threads_.emplace_back(run_local_agent, std::move(agent_side), std::move(objectives[i]));
    }
    return pool;
  }

  const auto address = parse_address(transport.listen);
  pool->listener_ = std::make_unique<TcpListener>(address);
  if (transport.spawn_local_agents) {
    const HostPort local{address.host == "0.0.0.0" ? "127.0.0.1" : address.host, pool->listener_->port()};
    for (std::size_t i = 0; i < num_agents; ++i) {
      pool->threads_.emplace_back(
          [local, i](std::unique_ptr<Objective> objective) {
            try {
              run_local_agent(connect_agent(local, static_cast<std::int64_t>(i)), std::move(objective));
            } catch (const Error&) {
              // connect failed; accept_agents reports the missing agent
            }
          },
          std::move(objectives[i]));
    }
  }
  const auto timeout = std::chrono::milliseconds(static_cast<std::int64_t>(transport.accept_timeout_s * 1000.0));
  try {
    pool->ports_ = pool->listener_->accept_agents(num_agents, timeout);
  } catch (...) {
    pool->listener_.reset();
    pool->shutdown();
    throw;
  }
  return pool;
}

}  // namespace swarmopt
