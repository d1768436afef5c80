#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "storen/adversary/strategy.hpp"
#include "storen/hash/family.hpp"
#include "storen/transport/audit.hpp"

namespace storen {

/// TCP prover service. Each accepted connection gets its own thread and ProverSession.
class ProverService {
 public:
  /// Binds and listens immediately (port 0 picks a free port). Throws Io on failure.
  ProverService(const HashFamily& fam, const ProverStore& store, const Endpoint& bind, std::uint64_t seed = 0);
  ~ProverService();
  ProverService(const ProverService&) = delete;
  ProverService& operator=(const ProverService&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Serves until stop() is called (from another thread or a signal handler flag).
  void run();
  void stop() noexcept { stop_.store(true); }
  std::uint64_t sessions_served() const noexcept { return served_.load(); }

  /// Idle connections are dropped after this long.
  Millis idle_limit{30000};

 private:
  void serve_connection(int fd);

  const HashFamily* fam_;
  const ProverStore* store_;
  std::uint64_t seed_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> served_{0};
  std::atomic<int> active_{0};
};

/// Convenience wrapper: serve until `stop` becomes true.
void run_prover_service(const HashFamily& fam, const ProverStore& store, const Endpoint& bind, std::uint64_t seed,
                        const std::atomic<bool>& stop);

}  // namespace storen
