#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "storen/adversary/strategy.hpp"
#include "storen/protocol/digest.hpp"
#include "storen/protocol/protocol.hpp"
#include "storen/transport/session.hpp"

namespace storen {

using Millis = std::chrono::milliseconds;

/// One prover as seen by the verifier: run a full exchange for challenge beta within `timeout`.
class ProverLink {
 public:
  virtual ~ProverLink() = default;
  virtual ExchangeResult exchange(const Fingerprint& fp, std::uint64_t beta, Millis timeout) = 0;
};

/// Deterministic clock for in-process links; time only moves when told to.
class SimulatedClock {
 public:
  Millis now() const noexcept { return Millis{now_.load()}; }
  void advance(Millis d) noexcept { now_ += d.count(); }
  /// Moves the clock forward to t if it is behind.
  void advance_to(Millis t) noexcept;

 private:
  std::atomic<Millis::rep> now_{0};
};

/// Runs a ProverSession directly. A withheld answer never arrives; any other reply arrives
/// after `latency` on the simulated clock and times out if that exceeds the verifier's deadline.
class InProcessLink final : public ProverLink {
 public:
  InProcessLink(const HashFamily& fam, const ProverStore& store, std::uint64_t seed, SimulatedClock& clock,
                Millis latency = Millis{0})
      : fam_(&fam), store_(&store), seed_(seed), clock_(&clock), latency_(latency) {}

  ExchangeResult exchange(const Fingerprint& fp, std::uint64_t beta, Millis timeout) override;

 private:
  const HashFamily* fam_;
  const ProverStore* store_;
  std::uint64_t seed_;
  SimulatedClock* clock_;
  Millis latency_;
};

/// A prover that is not there at all.
class DownLink final : public ProverLink {
 public:
  ExchangeResult exchange(const Fingerprint&, std::uint64_t, Millis) override {
    return ExchangeResult::of(ExchangeResult::Status::Unreachable);
  }
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};
/// host:port, port numeric. Throws Usage otherwise.
Endpoint parse_endpoint(const std::string& text);
std::vector<Endpoint> parse_endpoint_list(const std::string& comma_separated);

/// One TCP connection per exchange; refused connections and silence past the deadline
/// come back as Unreachable / TimedOut.
class TcpLink final : public ProverLink {
 public:
  explicit TcpLink(Endpoint endpoint) : endpoint_(std::move(endpoint)) {}
  ExchangeResult exchange(const Fingerprint& fp, std::uint64_t beta, Millis timeout) override;

 private:
  Endpoint endpoint_;
};

/// Digests are single-use. The registry remembers digests already audited in this process.
class DigestRegistry {
 public:
  /// Throws Usage if the digest was already spent.
  void spend(const Digest& d);
  bool spent(const Digest& d) const;

 private:
  mutable std::mutex mu_;
  std::set<std::vector<std::uint8_t>> spent_;
};

struct AuditResult {
  Verdict verdict;
  std::vector<ExchangeResult> exchanges;  // per prover, in order
};

/// Challenges every link concurrently with digest.beta, joins, and runs the matching verify.
/// Silence of any kind (NO_RESPONSE, timeout, unreachable, early close) is an erasure; an ERROR
/// frame from any prover aborts the audit with a Protocol error and no verdict.
/// `fam` is the family the provers hash under (the chunk family for the trivial variant).
AuditResult run_audit(const HashFamily& fam, const Digest& digest, std::span<ProverLink* const> links, Millis timeout,
                      DigestRegistry* registry = nullptr);

/// run_audit over TCP links, one address per prover.
AuditResult run_verifier_client(const HashFamily& fam, const Digest& digest, const std::vector<Endpoint>& provers,
                                Millis timeout, DigestRegistry* registry = nullptr);

/// Responses the verify step sees for a set of exchange results.
std::vector<Response> responses_of(std::uint64_t beta, std::span<const ExchangeResult> exchanges);

/// Timeout from STOREN_TIMEOUT_MS if set and valid, else `fallback`.
Millis timeout_from_env(Millis fallback);

}  // namespace storen
