#include "storen/transport/session.hpp"

#include "storen/error.hpp"

namespace storen {

const char* to_string(SessionPhase p) noexcept {
  switch (p) {
    case SessionPhase::Hello: return "hello";
    case SessionPhase::Challenged: return "challenged";
    case SessionPhase::Done: return "done";
  }
  return "?";
}

ProverSession::ProverSession(const HashFamily& fam, const ProverStore& store, std::uint64_t seed)
    : fam_(&fam), store_(&store), seed_(seed) {}

SessionStep ProverSession::error(WireError code) {
  phase_ = SessionPhase::Done;
  return {{ErrorMsg{static_cast<std::uint16_t>(code)}}, true, false};
}

SessionStep ProverSession::on_message(const WireMessage& m) {
  if (phase_ != SessionPhase::Hello) return error(WireError::UnexpectedMessage);
  if (const auto* hello = std::get_if<HelloMsg>(&m)) {
    if (greeted_) return error(WireError::UnexpectedMessage);
    if (hello->version != kWireVersion) return error(WireError::VersionMismatch);
    if (hello->family_fingerprint != fam_->fingerprint()) return error(WireError::FingerprintMismatch);
    greeted_ = true;
    return {};
  }
  const auto* challenge = std::get_if<ChallengeMsg>(&m);
  if (challenge == nullptr || !greeted_) return error(WireError::UnexpectedMessage);
  if (challenge->beta < 1 || challenge->beta > fam_->n()) return error(WireError::ChallengeOutOfRange);

  phase_ = SessionPhase::Challenged;
  Rng rng = Rng::for_stream(seed_, challenge->beta);
  const auto answer = store_->answer(challenge->beta, rng);
  if (answer) {
    phase_ = SessionPhase::Done;
    return {{ResponseMsg{*answer}}, true, false};
  }
  if (store_->silence_times_out()) return {{}, false, true};
  phase_ = SessionPhase::Done;
  return {{NoResponseMsg{}}, true, false};
}

std::vector<WireMessage> VerifierSession::opening() {
  require(phase_ == SessionPhase::Hello, ErrorKind::Usage, "verifier session already opened");
  phase_ = SessionPhase::Challenged;
  return {HelloMsg{kWireVersion, fp_}, ChallengeMsg{beta_}};
}

ExchangeResult VerifierSession::on_message(const WireMessage& m) {
  require(phase_ == SessionPhase::Challenged, ErrorKind::Protocol, "frame received outside the challenged phase");
  phase_ = SessionPhase::Done;
  if (const auto* r = std::get_if<ResponseMsg>(&m)) return ExchangeResult::answered(r->value);
  if (std::holds_alternative<NoResponseMsg>(m)) return ExchangeResult::of(ExchangeResult::Status::NoResponse);
  if (const auto* e = std::get_if<ErrorMsg>(&m)) return {ExchangeResult::Status::Error, 0, e->code};
  fail(ErrorKind::Protocol, "prover sent a verifier-only frame");
}

}  // namespace storen
