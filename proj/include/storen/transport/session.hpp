#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "storen/adversary/strategy.hpp"
#include "storen/hash/family.hpp"
#include "storen/transport/wire.hpp"

namespace storen {

enum class SessionRole { Verifier, Prover };
enum class SessionPhase { Hello, Challenged, Done };

const char* to_string(SessionPhase p) noexcept;

/// What a session wants done after consuming a frame.
struct SessionStep {
  std::vector<WireMessage> send;
  bool close = false;
  /// The prover deliberately stays silent; the connection is held until the peer gives up.
  bool withhold = false;
};

/// Prover half of one audit: HELLO, then exactly one CHALLENGE. Anything out of order
/// is answered with ERROR and the session closes.
class ProverSession {
 public:
  /// Answers draw randomness from Rng::for_stream(seed, beta), so a strategy's answer
  /// to a given challenge does not depend on which connection carried it.
  ProverSession(const HashFamily& fam, const ProverStore& store, std::uint64_t seed);

  SessionStep on_message(const WireMessage& m);
  SessionPhase phase() const noexcept { return phase_; }
  bool greeted() const noexcept { return greeted_; }

 private:
  SessionStep error(WireError code);

  const HashFamily* fam_;
  const ProverStore* store_;
  std::uint64_t seed_;
  SessionPhase phase_ = SessionPhase::Hello;
  bool greeted_ = false;
};

/// How one prover's exchange ended, from the verifier's side.
struct ExchangeResult {
  enum class Status { Answered, NoResponse, TimedOut, Unreachable, Error } status = Status::Unreachable;
  std::uint64_t value = 0;       // Answered
  std::uint16_t error_code = 0;  // Error

  static ExchangeResult answered(std::uint64_t v) { return {Status::Answered, v, 0}; }
  static ExchangeResult of(Status s) { return {s, 0, 0}; }
  friend bool operator==(const ExchangeResult&, const ExchangeResult&) = default;
};

/// Verifier half: sends HELLO + CHALLENGE, then waits for exactly one reply.
class VerifierSession {
 public:
  VerifierSession(const Fingerprint& fp, std::uint64_t beta) : fp_(fp), beta_(beta) {}

  std::vector<WireMessage> opening();
  /// Returns the result once the reply is in; a second reply or a stray frame is a protocol error.
  ExchangeResult on_message(const WireMessage& m);
  SessionPhase phase() const noexcept { return phase_; }

 private:
  Fingerprint fp_;
  std::uint64_t beta_;
  SessionPhase phase_ = SessionPhase::Hello;
};

}  // namespace storen
