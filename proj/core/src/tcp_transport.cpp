#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <set>

#include "swarmopt/error.hpp"
#include "swarmopt/transport.hpp"

namespace swarmopt {

HostPort parse_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(ErrorCode::InvalidConfig, "address '" + address + "' is not host:port");
  }
  HostPort hp;
  hp.host = address.substr(0, colon);
  unsigned port = 0;
  const char* first = address.data() + colon + 1;
  const char* last = address.data() + address.size();
  const auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || first == last || port > 65535) {
    throw Error(ErrorCode::InvalidConfig, "address '" + address + "' has an invalid port");
  }
  hp.port = static_cast<std::uint16_t>(port);
  return hp;
}

namespace {

std::string errno_text() { return std::strerror(errno); }

sockaddr_in resolve(const HostPort& address) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (const int rc = ::getaddrinfo(address.host.c_str(), nullptr, &hints, &res); rc != 0 || res == nullptr) {
    throw Error(ErrorCode::InvalidConfig, "cannot resolve host '" + address.host + "': " + ::gai_strerror(rc));
  }
  sockaddr_in sa{};
  std::memcpy(&sa, res->ai_addr, sizeof(sa));
  ::freeaddrinfo(res);
  sa.sin_port = htons(address.port);
  return sa;
}

/// One connected stream socket with a line-reassembly buffer.
class Connection {
 public:
  explicit Connection(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  ~Connection() { ::close(fd_); }
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;

  void write_frame(const Message& msg) {
    if (closed_) throw Error(ErrorCode::PortClosed, "connection already closed");
    std::string frame = encode(msg);
    frame += '\n';
    std::size_t off = 0;
    while (off < frame.size()) {
      const auto n = ::send(fd_, frame.data() + off, frame.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::PortClosed, "send failed: " + errno_text());
      }
      off += static_cast<std::size_t>(n);
    }
  }

  /// Pulls whatever bytes are available. Blocks up to `timeout_ms` (-1: forever) for the first byte.
  void fill(int timeout_ms) {
    if (eof_) return;
    pollfd pfd{fd_, POLLIN, 0};
    int rc;
    do {
      rc = ::poll(&pfd, 1, timeout_ms);
    } while (rc < 0 && errno == EINTR);
    if (rc < 0) throw Error(ErrorCode::PortClosed, "poll failed: " + errno_text());
    if (rc == 0) return;
    char buf[4096];
    for (;;) {
      const auto n = ::recv(fd_, buf, sizeof(buf), MSG_DONTWAIT);
      if (n > 0) {
        buffer_.append(buf, static_cast<std::size_t>(n));
        if (static_cast<std::size_t>(n) < sizeof(buf)) return;
        continue;
      }
      if (n == 0) {
        eof_ = true;
        return;
      }
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) return;
      eof_ = true;
      return;
    }
  }

  bool has_frame() const { return buffer_.find('\n') != std::string::npos; }

  bool probe() {
    if (closed_) throw Error(ErrorCode::PortClosed, "connection already closed");
    if (has_frame()) return true;
    fill(0);
    if (has_frame()) return true;
    if (eof_) throw Error(ErrorCode::PortClosed, "peer disconnected");
    return false;
  }

  Message take_frame() {
    const auto nl = buffer_.find('\n');
    Message msg = decode(std::string_view(buffer_).substr(0, nl));
    buffer_.erase(0, nl + 1);
    if (std::holds_alternative<Shutdown>(msg)) closed_ = true;
    return msg;
  }

  Message recv() {
    if (!probe()) throw Error(ErrorCode::WouldBlock, "recv without a ready message");
    return take_frame();
  }

  Message recv_wait(int timeout_ms = -1) {
    if (closed_) throw Error(ErrorCode::PortClosed, "connection already closed");
    while (!has_frame()) {
      if (eof_) throw Error(ErrorCode::PortClosed, "peer disconnected");
      const auto before = buffer_.size();
      fill(timeout_ms);
      if (timeout_ms >= 0 && buffer_.size() == before && !eof_) {
        throw Error(ErrorCode::AgentSpawnFailure, "timed out waiting for a frame");
      }
    }
    return take_frame();
  }

 private:
  int fd_;
  std::string buffer_;
  bool eof_ = false;
  bool closed_ = false;
};

class TcpOut final : public OutPort {
 public:
  explicit TcpOut(std::shared_ptr<Connection> c) : c_(std::move(c)) {}
  void send(const Message& msg) override { c_->write_frame(msg); }

 private:
  std::shared_ptr<Connection> c_;
};

class TcpIn final : public InPort {
 public:
  explicit TcpIn(std::shared_ptr<Connection> c) : c_(std::move(c)) {}
  bool probe() override { return c_->probe(); }
  Message recv() override { return c_->recv(); }
  Message recv_wait() override { return c_->recv_wait(); }

 private:
  std::shared_ptr<Connection> c_;
};

int open_connection(const HostPort& address) {
  const sockaddr_in sa = resolve(address);
  const int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw Error(ErrorCode::PortClosed, "socket failed: " + errno_text());
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
    const auto why = errno_text();
    ::close(fd);
    throw Error(ErrorCode::PortClosed,
                "cannot connect to " + address.host + ":" + std::to_string(address.port) + ": " + why);
  }
  return fd;
}

}  // namespace

TcpListener::TcpListener(const HostPort& address) {
  const sockaddr_in sa = resolve(address);
  fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd_ < 0) throw Error(ErrorCode::AgentSpawnFailure, "socket failed: " + errno_text());
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0 || ::listen(fd_, 128) != 0) {
    const auto why = errno_text();
    ::close(fd_);
    throw Error(ErrorCode::AgentSpawnFailure, "cannot listen on " + address.host + ":" +
                                                  std::to_string(address.port) + ": " + why);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() { ::close(fd_); }

std::vector<PortPair> TcpListener::accept_agents(std::size_t n, std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  auto remaining_ms = [&] {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    return static_cast<int>(std::max<std::int64_t>(left.count(), 0));
  };

  std::vector<std::pair<std::int64_t, std::shared_ptr<Connection>>> hellos;
  while (hellos.size() < n) {
    pollfd pfd{fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, remaining_ms());
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) {
      throw Error(ErrorCode::AgentSpawnFailure, "only " + std::to_string(hellos.size()) + " of " +
                                                    std::to_string(n) + " agents connected before the timeout");
    }
    const int cfd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (cfd < 0) continue;
    auto conn = std::make_shared<Connection>(cfd);
    Message first = conn->recv_wait(std::max(remaining_ms(), 1));
    const auto* hello = std::get_if<Hello>(&first);
    if (hello == nullptr) throw Error(ErrorCode::ProtocolViolation, "agent's first frame was not hello");
    hellos.emplace_back(hello->agent_id, std::move(conn));
  }

  std::set<std::size_t> free_ids;
  for (std::size_t i = 0; i < n; ++i) free_ids.insert(i);
  std::vector<std::size_t> assigned(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto want = hellos[k].first;
    if (want >= 0 && static_cast<std::size_t>(want) < n && free_ids.erase(static_cast<std::size_t>(want))) {
      assigned[k] = static_cast<std::size_t>(want);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (assigned[k] == n) {
      assigned[k] = *free_ids.begin();
      free_ids.erase(free_ids.begin());
    }
  }

  std::vector<PortPair> ports(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& conn = hellos[k].second;
    ports[assigned[k]] = PortPair{assigned[k], std::make_unique<TcpOut>(conn), std::make_unique<TcpIn>(conn)};
  }
  return ports;
}

AgentEndpoints connect_agent(const HostPort& address, std::int64_t requested_id) {
  auto conn = std::make_shared<Connection>(open_connection(address));
  conn->write_frame(Hello{requested_id});
  return AgentEndpoints{static_cast<std::size_t>(std::max<std::int64_t>(requested_id, 0)),
                        std::make_unique<TcpIn>(conn), std::make_unique<TcpOut>(conn)};
}

std::pair<PortPair, AgentEndpoints> make_tcp_loopback_link(std::size_t agent_id) {
  TcpListener listener({"127.0.0.1", 0});
  auto agent = connect_agent({"127.0.0.1", listener.port()}, static_cast<std::int64_t>(agent_id));
  auto ports = listener.accept_agents(1, std::chrono::seconds(10));
  ports.front().agent_id = agent_id;
  return {std::move(ports.front()), std::move(agent)};
}

}  // namespace swarmopt
