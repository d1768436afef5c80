#pragma once

#include <netdb.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <span>
#include <string>

namespace storen::detail {

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(o.release()) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) reset(o.release());
    return *this;
  }
  ~Fd() { reset(); }

  int get() const noexcept { return fd_; }
  explicit operator bool() const noexcept { return fd_ >= 0; }
  int release() noexcept {
    const int f = fd_;
    fd_ = -1;
    return f;
  }
  void reset(int fd = -1) noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_ = -1;
};

struct AddrInfo {
  addrinfo* list = nullptr;
  ~AddrInfo() {
    if (list != nullptr) freeaddrinfo(list);
  }
};

using Clock = std::chrono::steady_clock;

void set_nonblocking(int fd);
/// Milliseconds left until `deadline`, clamped to [0, cap].
int poll_budget(Clock::time_point deadline, int cap_ms = 1 << 30);
/// Sends everything before the deadline; false on error or timeout.
bool send_all(int fd, std::span<const std::uint8_t> bytes, Clock::time_point deadline);

}  // namespace storen::detail
