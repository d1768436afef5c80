#include "storen/transport/service.hpp"

#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "socket.hpp"
#include "storen/error.hpp"

namespace storen {

using detail::Clock;

ProverService::ProverService(const HashFamily& fam, const ProverStore& store, const Endpoint& bind, std::uint64_t seed)
    : fam_(&fam), store_(&store), seed_(seed) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  detail::AddrInfo res;
  const std::string port = std::to_string(bind.port);
  const int rc = getaddrinfo(bind.host.empty() ? nullptr : bind.host.c_str(), port.c_str(), &hints, &res.list);
  require(rc == 0, ErrorKind::Io, "cannot resolve bind address " + bind.host + ": " + gai_strerror(rc));
  std::string last_error = "no usable address";
  for (addrinfo* a = res.list; a != nullptr; a = a->ai_next) {
    detail::Fd fd(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!fd) continue;
    const int one = 1;
    setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd.get(), a->ai_addr, a->ai_addrlen) != 0 || ::listen(fd.get(), 64) != 0) {
      last_error = std::strerror(errno);
      continue;
    }
    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    getsockname(fd.get(), reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port
                                              : reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
    detail::set_nonblocking(fd.get());
    listen_fd_ = fd.release();
    return;
  }
  fail(ErrorKind::Io, "cannot listen on " + bind.host + ":" + port + ": " + last_error);
}

ProverService::~ProverService() {
  stop();
  while (active_.load() > 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void ProverService::run() {
  while (!stop_.load()) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 50) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    ++active_;
    std::thread([this, fd] {
      serve_connection(fd);
      --active_;
    }).detach();
  }
  while (active_.load() > 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
}

void ProverService::serve_connection(int raw) {
  detail::Fd fd(raw);
  detail::set_nonblocking(fd.get());
  ProverSession session(*fam_, *store_, seed_);
  std::vector<std::uint8_t> in;
  std::uint8_t buf[256];
  auto idle_deadline = Clock::now() + idle_limit;
  const auto reply = [&](const SessionStep& step) {
    std::vector<std::uint8_t> out;
    for (const auto& m : step.send) append_message(out, m);
    if (!out.empty()) detail::send_all(fd.get(), out, Clock::now() + idle_limit);
  };

  while (!stop_.load() && Clock::now() < idle_deadline) {
    pollfd p{fd.get(), POLLIN, 0};
    const int ready = ::poll(&p, 1, detail::poll_budget(idle_deadline, 50));
    if (ready <= 0) continue;
    const ssize_t n = ::recv(fd.get(), buf, sizeof buf, 0);
    if (n < 0 && (errno == EINTR || errno == EAGAIN)) continue;
    if (n <= 0) break;
    in.insert(in.end(), buf, buf + n);
    idle_deadline = Clock::now() + idle_limit;

    bool close = false;
    try {
      while (auto frame = decode_message(in)) {
        in.erase(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(frame->consumed));
        const SessionStep step = session.on_message(frame->message);
        reply(step);
        if (step.close) {
          close = true;
          break;
        }
        // Withholding: keep reading (and ignoring) until the verifier gives up.
      }
    } catch (const Error&) {
      reply({{ErrorMsg{static_cast<std::uint16_t>(WireError::Malformed)}}, true, false});
      close = true;
    }
    if (close) {
      // Half-close and drain so late bytes from the peer do not turn our FIN into a reset
      // that would discard the reply before the verifier reads it.
      ::shutdown(fd.get(), SHUT_WR);
      const auto drain_until = Clock::now() + std::chrono::milliseconds(200);
      while (Clock::now() < drain_until) {
        pollfd d{fd.get(), POLLIN, 0};
        if (::poll(&d, 1, detail::poll_budget(drain_until, 50)) <= 0) continue;
        if (::recv(fd.get(), buf, sizeof buf, 0) <= 0) break;
      }
      break;
    }
  }
  if (session.greeted()) ++served_;
}

void run_prover_service(const HashFamily& fam, const ProverStore& store, const Endpoint& bind, std::uint64_t seed,
                        const std::atomic<bool>& stop) {
  ProverService service(fam, store, bind, seed);
  std::jthread watcher([&](std::stop_token st) {
    while (!st.stop_requested() && !stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(20));
    service.stop();
  });
  service.run();
}

}  // namespace storen
