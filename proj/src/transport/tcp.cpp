#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>

#include <cerrno>
#include <cstring>

#include "socket.hpp"
#include "storen/error.hpp"
#include "storen/transport/audit.hpp"

namespace storen {

namespace detail {

void set_nonblocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

int poll_budget(Clock::time_point deadline, int cap_ms) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  if (left <= 0) return 0;
  return static_cast<int>(std::min<long long>(left, cap_ms));
}

bool send_all(int fd, std::span<const std::uint8_t> bytes, Clock::time_point deadline) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n > 0) {
      sent += static_cast<std::size_t>(n);
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      pollfd p{fd, POLLOUT, 0};
      const int budget = poll_budget(deadline);
      if (budget == 0 || ::poll(&p, 1, budget) <= 0) return false;
      continue;
    }
    return false;
  }
  return true;
}

}  // namespace detail

using detail::Clock;
using Status = ExchangeResult::Status;

namespace {

// Non-blocking connect bounded by the deadline.
detail::Fd connect_before(const Endpoint& ep, Clock::time_point deadline, bool& timed_out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  detail::AddrInfo res;
  const std::string port = std::to_string(ep.port);
  if (getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &res.list) != 0) return {};
  for (addrinfo* a = res.list; a != nullptr; a = a->ai_next) {
    detail::Fd fd(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!fd) continue;
    detail::set_nonblocking(fd.get());
    if (::connect(fd.get(), a->ai_addr, a->ai_addrlen) == 0) return fd;
    if (errno != EINPROGRESS) continue;
    pollfd p{fd.get(), POLLOUT, 0};
    const int ready = ::poll(&p, 1, detail::poll_budget(deadline));
    if (ready == 0) {
      timed_out = true;
      return {};
    }
    int err = 0;
    socklen_t len = sizeof err;
    if (ready > 0 && getsockopt(fd.get(), SOL_SOCKET, SO_ERROR, &err, &len) == 0 && err == 0) return fd;
  }
  return {};
}

}  // namespace

ExchangeResult TcpLink::exchange(const Fingerprint& fp, std::uint64_t beta, Millis timeout) {
  const auto deadline = Clock::now() + timeout;
  bool timed_out = false;
  detail::Fd fd = connect_before(endpoint_, deadline, timed_out);
  if (!fd) return ExchangeResult::of(timed_out ? Status::TimedOut : Status::Unreachable);
  const int one = 1;
  setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);

  VerifierSession session(fp, beta);
  std::vector<std::uint8_t> out;
  for (const auto& m : session.opening()) append_message(out, m);
  // A prover that hangs up right after rejecting HELLO may reset before we finish
  // writing; whatever it sent is still read below.
  (void)detail::send_all(fd.get(), out, deadline);

  std::vector<std::uint8_t> in;
  std::uint8_t buf[256];
  for (;;) {
    if (auto frame = decode_message(in)) return session.on_message(frame->message);
    pollfd p{fd.get(), POLLIN, 0};
    const int budget = detail::poll_budget(deadline);
    if (budget == 0) return ExchangeResult::of(Status::TimedOut);
    const int ready = ::poll(&p, 1, budget);
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) return ExchangeResult::of(Status::TimedOut);
    const ssize_t n = ::recv(fd.get(), buf, sizeof buf, 0);
    if (n < 0 && (errno == EINTR || errno == EAGAIN)) continue;
    if (n <= 0) return ExchangeResult::of(Status::NoResponse);  // closed without answering
    in.insert(in.end(), buf, buf + n);
  }
}

}  // namespace storen
