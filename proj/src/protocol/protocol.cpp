#include "storen/protocol/protocol.hpp"

#include "storen/codes/reed_solomon.hpp"
#include "storen/error.hpp"
#include "storen/hash/evaluate.hpp"
#include "storen/protocol/rng.hpp"

namespace storen {

namespace {

void check_family(const HashFamily& fam, const Digest& digest, ProtocolVariant expected) {
  if (digest.family_fingerprint != fam.fingerprint()) fail(ErrorKind::Protocol, "digest was made for a different hash family");
  if (digest.variant != expected) fail(ErrorKind::Protocol, "digest variant does not match the verifier");
  if (digest.beta < 1 || digest.beta > fam.n()) fail(ErrorKind::Protocol, "digest beta outside the family");
}

void check_responses(const Digest& digest, std::span<const Response> responses) {
  for (const auto& r : responses) {
    if (r.beta != digest.beta) fail(ErrorKind::Protocol, "response answers a different challenge");
  }
}

Digest make_digest(const HashFamily& fam, ProtocolVariant variant, std::uint64_t beta) {
  require(beta >= 1 && beta <= fam.n(), ErrorKind::Usage, "challenge index outside [1, n]");
  Digest d;
  d.variant = variant;
  d.family_fingerprint = fam.fingerprint();
  d.beta = beta;
  return d;
}

std::uint64_t expected_provers(std::span<const Response> responses) {
  require(!responses.empty(), ErrorKind::Usage, "no prover responses supplied");
  return responses.size();
}

}  // namespace

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Accepted: return "accepted";
    case Outcome::Rejected: return "rejected";
    case Outcome::Undecidable: return "undecidable";
  }
  return "unknown";
}

ChunkPlan::ChunkPlan(std::uint64_t k, std::uint64_t s) : k_(k), s_(s) {
  require(s >= 1, ErrorKind::Usage, "prover count must be positive");
  require(k % s == 0, ErrorKind::Usage, "prover count must divide the message length k");
}

std::uint64_t ChunkPlan::offset(std::uint64_t prover) const {
  require(prover >= 1 && prover <= s_, ErrorKind::Usage, "prover index outside [1, s]");
  return (prover - 1) * chunk_length();
}

Message chunk_of(const Message& x, const ChunkPlan& plan, std::uint64_t prover) {
  const auto& symbols = x.as_symbols();
  require(symbols.size() == plan.k(), ErrorKind::Usage, "message length differs from the chunk plan");
  const auto begin = symbols.begin() + static_cast<std::ptrdiff_t>(plan.offset(prover));
  return Message::symbols(Message::Symbols(begin, begin + static_cast<std::ptrdiff_t>(plan.chunk_length())));
}

Message zero_extended_chunk(const Message& x, const ChunkPlan& plan, std::uint64_t prover) {
  const auto& symbols = x.as_symbols();
  require(symbols.size() == plan.k(), ErrorKind::Usage, "message length differs from the chunk plan");
  Message::Symbols out(symbols.size(), FieldElement::zero(symbols.front().modulus()));
  const std::uint64_t from = plan.offset(prover);
  for (std::uint64_t j = from; j < from + plan.chunk_length(); ++j) out[j] = symbols[j];
  return Message::symbols(std::move(out));
}

std::uint64_t draw_challenge(std::uint64_t seed, std::uint64_t n) { return Rng::for_stream(seed, 0).index(n); }

std::uint64_t honest_answer(const HashFamily& fam, const Message& held, std::uint64_t beta) {
  return hash_eval(fam, held, beta).value();
}

// --- single prover ---------------------------------------------------------

Digest single_preprocess_at(const HashFamily& fam, const Message& x, std::uint64_t beta) {
  Digest d = make_digest(fam, ProtocolVariant::Single, beta);
  d.gammas.push_back(hash_eval(fam, x, beta).value());
  return d;
}

Digest single_preprocess(const HashFamily& fam, const Message& x, std::uint64_t seed) {
  return single_preprocess_at(fam, x, draw_challenge(seed, fam.n()));
}

Verdict single_verify(const HashFamily& fam, const Digest& digest, const Response& response) {
  check_family(fam, digest, ProtocolVariant::Single);
  require(digest.gammas.size() == 1, ErrorKind::Protocol, "single digest must hold one gamma");
  check_responses(digest, std::span(&response, 1));
  Verdict v;
  if (!response.value) {
    v.erased.insert(1);
  } else if (*response.value == digest.gammas.front()) {
    v.outcome = Outcome::Accepted;
  } else {
    v.accused.insert(1);
  }
  return v;
}

// --- s provers, per-chunk hashes --------------------------------------------

Digest multi_trivial_preprocess_at(const HashFamily& chunk_fam, std::span<const Message> chunks, std::uint64_t beta) {
  require(!chunks.empty(), ErrorKind::Usage, "at least one chunk required");
  Digest d = make_digest(chunk_fam, ProtocolVariant::Trivial, beta);
  for (const auto& chunk : chunks) d.gammas.push_back(hash_eval(chunk_fam, chunk, beta).value());
  return d;
}

Digest multi_trivial_preprocess(const HashFamily& chunk_fam, std::span<const Message> chunks, std::uint64_t seed) {
  return multi_trivial_preprocess_at(chunk_fam, chunks, draw_challenge(seed, chunk_fam.n()));
}

Digest multi_trivial_preprocess(const HashFamily& chunk_fam, const Message& x, const ChunkPlan& plan,
                                std::uint64_t seed) {
  require(chunk_fam.k() == plan.chunk_length(), ErrorKind::Usage, "chunk family k differs from the chunk length");
  std::vector<Message> chunks;
  for (std::uint64_t i = 1; i <= plan.provers(); ++i) chunks.push_back(chunk_of(x, plan, i));
  return multi_trivial_preprocess(chunk_fam, chunks, seed);
}

Verdict multi_trivial_verify(const HashFamily& chunk_fam, const Digest& digest, std::span<const Response> responses) {
  check_family(chunk_fam, digest, ProtocolVariant::Trivial);
  check_responses(digest, responses);
  require(responses.size() == digest.gammas.size(), ErrorKind::Usage, "one response per stored gamma required");
  Verdict v;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (!responses[i].value) {
      v.erased.insert(i + 1);
    } else if (*responses[i].value != digest.gammas[i]) {
      v.accused.insert(i + 1);
    }
  }
  if (v.accused.empty() && v.erased.empty()) v.outcome = Outcome::Accepted;
  return v;
}

// --- s provers, linear single hash ------------------------------------------

Digest multi_linear_preprocess_at(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t beta) {
  require(fam.is_linear(), ErrorKind::Unsupported, "linear protocol requires a linear (polynomial) family");
  require(plan.k() == fam.k(), ErrorKind::Usage, "chunk plan k differs from the family");
  Digest d = make_digest(fam, ProtocolVariant::Linear, beta);
  d.gammas.push_back(hash_eval(fam, x, beta).value());
  return d;
}

Digest multi_linear_preprocess(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t seed) {
  return multi_linear_preprocess_at(fam, x, plan, draw_challenge(seed, fam.n()));
}

Verdict multi_linear_verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses) {
  require(fam.is_linear(), ErrorKind::Unsupported, "linear protocol requires a linear (polynomial) family");
  check_family(fam, digest, ProtocolVariant::Linear);
  check_responses(digest, responses);
  expected_provers(responses);
  require(digest.gammas.size() == 1, ErrorKind::Protocol, "linear digest must hold one gamma");
  const PrimeModulus q = fam.field();
  Verdict v;
  FieldElement sum = FieldElement::zero(q);
  bool in_range = true;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (!responses[i].value) {
      v.erased.insert(i + 1);
      continue;
    }
    in_range = in_range && *responses[i].value < q.value();
    sum += FieldElement(*responses[i].value, q);
  }
  if (v.erased.empty() && in_range && sum.value() == digest.gammas.front()) v.outcome = Outcome::Accepted;
  return v;
}

// --- s provers, RS parity ---------------------------------------------------

Digest multi_rs_preprocess_at(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t r,
                              std::uint64_t e, std::uint64_t beta) {
  require(fam.is_linear(), ErrorKind::Unsupported, "rs-parity protocol requires a linear (polynomial) family");
  require(plan.k() == fam.k(), ErrorKind::Usage, "chunk plan k differs from the family");
  const std::uint64_t s = plan.provers();
  require(r <= s && e <= s, ErrorKind::Parameter, "r and e must not exceed the prover count");
  const SystematicRSCode code(s, 2 * r + e + s, fam.field());
  Digest d = make_digest(fam, ProtocolVariant::RsParity, beta);
  std::vector<std::uint64_t> v;
  for (std::uint64_t i = 1; i <= s; ++i) v.push_back(hash_eval(fam, zero_extended_chunk(x, plan, i), beta).value());
  const auto c = rs_encode_systematic(code, v);
  d.gammas.assign(c.symbols.begin() + static_cast<std::ptrdiff_t>(s), c.symbols.end());
  return d;
}

Digest multi_rs_preprocess(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t r,
                           std::uint64_t e, std::uint64_t seed) {
  return multi_rs_preprocess_at(fam, x, plan, r, e, draw_challenge(seed, fam.n()));
}

Verdict multi_rs_verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses) {
  require(fam.is_linear(), ErrorKind::Unsupported, "rs-parity protocol requires a linear (polynomial) family");
  check_family(fam, digest, ProtocolVariant::RsParity);
  check_responses(digest, responses);
  const std::uint64_t s = expected_provers(responses);
  const std::uint64_t q = fam.field().value();
  Verdict v;
  std::set<std::size_t> out_of_range;
  ReceivedWord z;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (!responses[i].value) {
      v.erased.insert(i + 1);
      z.emplace_back();
    } else if (*responses[i].value >= q) {
      // Certainly wrong; its location is known, so it costs the decoder one erasure.
      out_of_range.insert(i + 1);
      z.emplace_back();
    } else {
      z.emplace_back(*responses[i].value);
    }
  }
  for (std::uint64_t g : digest.gammas) {
    require(g < q, ErrorKind::Protocol, "digest parity symbol outside the field");
    z.emplace_back(g);
  }
  require(s + digest.gammas.size() <= q, ErrorKind::Parameter, "RS block length exceeds the field size");
  const SystematicRSCode code(s, s + digest.gammas.size(), fam.field());
  const auto decoded = rs_decode_errors_erasures(code, z);
  if (!decoded) {
    v.outcome = Outcome::Undecidable;
    return v;
  }
  bool parity_disagrees = false;
  for (std::size_t pos : decoded->error_positions) {
    if (pos <= s) {
      v.accused.insert(pos);
    } else {
      parity_disagrees = true;
    }
  }
  v.accused.insert(out_of_range.begin(), out_of_range.end());
  v.outcome = v.accused.empty() && !parity_disagrees ? Outcome::Accepted : Outcome::Rejected;
  return v;
}

Verdict verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses) {
  switch (digest.variant) {
    case ProtocolVariant::Single:
      require(responses.size() == 1, ErrorKind::Usage, "single-prover audit takes exactly one response");
      return single_verify(fam, digest, responses.front());
    case ProtocolVariant::Trivial: return multi_trivial_verify(fam, digest, responses);
    case ProtocolVariant::Linear: return multi_linear_verify(fam, digest, responses);
    case ProtocolVariant::RsParity: return multi_rs_verify(fam, digest, responses);
  }
  fail(ErrorKind::Protocol, "unknown digest variant");
}

}  // namespace storen
