#include "storen/transport/audit.hpp"

#include <future>

#include "storen/error.hpp"

namespace storen {

void SimulatedClock::advance_to(Millis t) noexcept {
  auto cur = now_.load();
  while (cur < t.count() && !now_.compare_exchange_weak(cur, t.count())) {
  }
}

ExchangeResult InProcessLink::exchange(const Fingerprint& fp, std::uint64_t beta, Millis timeout) {
  const Millis start = clock_->now();
  ProverSession prover(*fam_, *store_, seed_);
  VerifierSession verifier(fp, beta);
  for (const auto& frame : verifier.opening()) {
    const SessionStep step = prover.on_message(frame);
    if (!step.send.empty()) {
      if (latency_ > timeout) {
        clock_->advance_to(start + timeout);
        return ExchangeResult::of(ExchangeResult::Status::TimedOut);
      }
      clock_->advance_to(start + latency_);
      return verifier.on_message(step.send.front());
    }
    if (step.close) return ExchangeResult::of(ExchangeResult::Status::NoResponse);
    if (step.withhold) break;
  }
  clock_->advance_to(start + timeout);
  return ExchangeResult::of(ExchangeResult::Status::TimedOut);
}

Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  require(colon != std::string::npos && colon > 0 && colon + 1 < text.size(), ErrorKind::Usage,
          "address '" + text + "' is not host:port");
  Endpoint ep;
  ep.host = text.substr(0, colon);
  if (ep.host.size() > 2 && ep.host.front() == '[' && ep.host.back() == ']') ep.host = ep.host.substr(1, ep.host.size() - 2);
  unsigned long port = 0;
  std::size_t used = 0;
  try {
    port = std::stoul(text.substr(colon + 1), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() - colon - 1 && port <= 65535, ErrorKind::Usage, "address '" + text + "' has a bad port");
  ep.port = static_cast<std::uint16_t>(port);
  return ep;
}

std::vector<Endpoint> parse_endpoint_list(const std::string& comma_separated) {
  std::vector<Endpoint> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = comma_separated.find(',', start);
    out.push_back(parse_endpoint(comma_separated.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void DigestRegistry::spend(const Digest& d) {
  std::lock_guard lock(mu_);
  require(spent_.insert(encode_digest_file(d)).second, ErrorKind::Usage, "digest already used; digests are single-use");
}

bool DigestRegistry::spent(const Digest& d) const {
  std::lock_guard lock(mu_);
  return spent_.count(encode_digest_file(d)) != 0;
}

std::vector<Response> responses_of(std::uint64_t beta, std::span<const ExchangeResult> exchanges) {
  std::vector<Response> out;
  out.reserve(exchanges.size());
  for (const auto& x : exchanges) {
    out.push_back(x.status == ExchangeResult::Status::Answered ? Response::answer(beta, x.value) : Response::silent(beta));
  }
  return out;
}

AuditResult run_audit(const HashFamily& fam, const Digest& digest, std::span<ProverLink* const> links, Millis timeout,
                      DigestRegistry* registry) {
  require(digest.family_fingerprint == fam.fingerprint(), ErrorKind::Usage, "digest was made for a different family");
  require(!links.empty(), ErrorKind::Usage, "no provers to audit");
  if (digest.variant == ProtocolVariant::Single) {
    require(links.size() == 1, ErrorKind::Usage, "single-prover digest needs exactly one prover address");
  } else if (digest.variant == ProtocolVariant::Trivial) {
    require(links.size() == digest.gammas.size(), ErrorKind::Usage, "trivial digest needs one address per stored hash");
  }
  if (registry != nullptr) registry->spend(digest);

  std::vector<std::future<ExchangeResult>> pending;
  pending.reserve(links.size());
  for (ProverLink* link : links) {
    pending.push_back(std::async(std::launch::async, [&, link] {
      return link->exchange(digest.family_fingerprint, digest.beta, timeout);
    }));
  }
  AuditResult result;
  std::exception_ptr first_error;
  for (auto& f : pending) {
    try {
      result.exchanges.push_back(f.get());
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
      result.exchanges.push_back(ExchangeResult::of(ExchangeResult::Status::Unreachable));
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  for (std::size_t i = 0; i < result.exchanges.size(); ++i) {
    const auto& x = result.exchanges[i];
    if (x.status == ExchangeResult::Status::Error) {
      fail(ErrorKind::Protocol,
           "prover " + std::to_string(i + 1) + " refused the audit (error code " + std::to_string(x.error_code) + ")");
    }
  }
  const auto responses = responses_of(digest.beta, result.exchanges);
  result.verdict = verify(fam, digest, responses);
  return result;
}

AuditResult run_verifier_client(const HashFamily& fam, const Digest& digest, const std::vector<Endpoint>& provers,
                                Millis timeout, DigestRegistry* registry) {
  std::vector<TcpLink> links;
  links.reserve(provers.size());
  for (const auto& ep : provers) links.emplace_back(ep);
  std::vector<ProverLink*> ptrs;
  for (auto& l : links) ptrs.push_back(&l);
  return run_audit(fam, digest, ptrs, timeout, registry);
}

Millis timeout_from_env(Millis fallback) {
  const char* env = std::getenv("STOREN_TIMEOUT_MS");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  require(end != nullptr && *end == '\0' && v > 0, ErrorKind::Usage, "STOREN_TIMEOUT_MS must be a positive integer");
  return Millis{v};
}

}  // namespace storen
