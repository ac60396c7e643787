#include "adaptivemon/peer/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <map>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon::peer {

namespace {

constexpr int kMaxWaitMs = 200;

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  int get() const noexcept { return fd_; }
  explicit operator bool() const noexcept { return fd_ >= 0; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void resolve(const Endpoint& ep, bool passive, AddrInfo& out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const std::string port = std::to_string(ep.port);
  const char* host = ep.host.empty() || ep.host == "*" ? nullptr : ep.host.c_str();
  if (int rc = getaddrinfo(host, port.c_str(), &hints, &out.head); rc != 0) {
    throw ConfigError(fmt::format("cannot resolve {}: {}", ep.to_string(), gai_strerror(rc)));
  }
}

Fd connect_to(const Endpoint& ep) {
  AddrInfo ai;
  resolve(ep, false, ai);
  for (auto* a = ai.head; a; a = a->ai_next) {
    Fd fd(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!fd) continue;
    if (::connect(fd.get(), a->ai_addr, a->ai_addrlen) == 0) {
      int one = 1;
      ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return fd;
    }
  }
  return Fd{};
}

bool send_all(int fd, std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

// Returns false when the peer closed the connection or an error occurred.
bool read_into(int fd, LineFramer& framer) {
  char buf[4096];
  const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
  if (n > 0) {
    framer.feed({buf, static_cast<std::size_t>(n)});
    return true;
  }
  return n < 0 && (errno == EINTR || errno == EAGAIN);
}

int wait_ms(double seconds) {
  return std::clamp(static_cast<int>(seconds * 1000.0), 0, kMaxWaitMs);
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    throw ConfigError(fmt::format("expected HOST:PORT, got '{}'", text));
  }
  Endpoint ep;
  std::string_view host = text.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  ep.host = std::string(host);
  const std::string_view port = text.substr(colon + 1);
  unsigned value = 0;
  auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc{} || p != port.data() + port.size() || value > 65535) {
    throw ConfigError(fmt::format("invalid port in '{}'", text));
  }
  ep.port = static_cast<std::uint16_t>(value);
  return ep;
}

std::vector<Endpoint> Endpoint::parse_list(std::string_view text) {
  std::vector<Endpoint> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    if (!item.empty()) out.push_back(parse(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string Endpoint::to_string() const {
  if (host.find(':') != std::string::npos) return fmt::format("[{}]:{}", host, port);
  return fmt::format("{}:{}", host, port);
}

void run_follower(Follower& follower, const Endpoint& leader, const Clock& clock, const std::atomic<bool>& stop) {
  Fd conn;
  LineFramer inbound;

  auto connect = [&] {
    while (!stop) {
      conn = connect_to(leader);
      if (conn && send_all(conn.get(), encode_message(follower.register_message()))) {
        spdlog::info("{}: connected to leader {}", follower.node(), leader.to_string());
        return true;
      }
      conn.reset();
      ::poll(nullptr, 0, kMaxWaitMs);
    }
    return false;
  };

  if (!connect()) return;
  while (!stop) {
    const double now = clock.now();
    const double due = follower.next_due().value_or(now + 1.0);
    if (due <= now) {
      for (const auto& m : follower.cycle(now)) {
        if (!send_all(conn.get(), encode_message(m))) {
          spdlog::warn("{}: lost connection to leader, reconnecting", follower.node());
          if (!connect()) return;
        }
      }
      continue;
    }
    pollfd pfd{conn.get(), POLLIN, 0};
    if (::poll(&pfd, 1, wait_ms(due - now)) > 0 && (pfd.revents & (POLLIN | POLLHUP | POLLERR))) {
      // Leaders never push to followers; reading only detects a closed link.
      if (!read_into(conn.get(), inbound)) {
        spdlog::warn("{}: leader closed the connection, reconnecting", follower.node());
        if (!connect()) return;
      }
      while (inbound.next()) {
      }
    }
  }
  send_all(conn.get(), encode_message(follower.bye_message()));
}

void run_leader(Leader& leader, const Endpoint& listen, const Clock& clock, const std::atomic<bool>& stop,
                const LeaderRuntimeOptions& opts) {
  AddrInfo ai;
  resolve(listen, true, ai);
  Fd server;
  for (auto* a = ai.head; a && !server; a = a->ai_next) {
    Fd fd(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!fd) continue;
    int one = 1;
    ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd.get(), a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd.get(), 64) == 0) server = std::move(fd);
  }
  if (!server) throw ConfigError(fmt::format("cannot listen on {}: {}", listen.to_string(), std::strerror(errno)));

  sockaddr_storage bound{};
  socklen_t len = sizeof bound;
  ::getsockname(server.get(), reinterpret_cast<sockaddr*>(&bound), &len);
  const auto port = ntohs(bound.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port
                                                      : reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  spdlog::info("{}: listening on port {}", leader.node(), port);
  if (opts.on_listening) opts.on_listening(port);

  struct Conn {
    Fd fd;
    LineFramer framer;
  };
  std::vector<Conn> conns;
  std::map<std::string, Fd> outbound;
  double next_gossip = clock.now() + leader.gossip().period;

  while (!stop) {
    std::vector<pollfd> fds{{server.get(), POLLIN, 0}};
    for (const auto& c : conns) fds.push_back({c.fd.get(), POLLIN, 0});
    ::poll(fds.data(), fds.size(), wait_ms(next_gossip - clock.now()));

    if (fds[0].revents & POLLIN) {
      Fd client(::accept(server.get(), nullptr, nullptr));
      if (client) conns.push_back({std::move(client), LineFramer{}});
    }
    for (std::size_t i = 1; i < fds.size(); ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      Conn& c = conns[i - 1];
      const bool open = read_into(c.fd.get(), c.framer);
      try {
        while (auto line = c.framer.next()) {
          try {
            leader.on_message(decode_message(*line), clock.now());
          } catch (const DecodeError& e) {
            spdlog::warn("{}: dropping malformed message: {}", leader.node(), e.what());
          }
        }
      } catch (const DecodeError& e) {
        spdlog::warn("{}: closing connection: {}", leader.node(), e.what());
        c.fd.reset();
      }
      if (!open) c.fd.reset();
    }
    std::erase_if(conns, [](const Conn& c) { return !c.fd; });

    if (clock.now() >= next_gossip) {
      next_gossip += leader.gossip().period;
      for (const auto& [to, msg] : leader.gossip_tick()) {
        Fd& fd = outbound[to];
        if (!fd) {
          try {
            fd = connect_to(Endpoint::parse(to));
          } catch (const ConfigError& e) {
            spdlog::warn("{}: {}", leader.node(), e.what());
          }
          if (!fd || !send_all(fd.get(), encode_message(Register{leader.node(), Role::leader}))) {
            spdlog::warn("{}: gossip peer {} unreachable", leader.node(), to);
            fd.reset();
            continue;
          }
        }
        if (!send_all(fd.get(), encode_message(msg))) {
          spdlog::warn("{}: gossip to {} failed", leader.node(), to);
          fd.reset();
        }
      }
    }
  }
}

}  // namespace adaptivemon::peer
