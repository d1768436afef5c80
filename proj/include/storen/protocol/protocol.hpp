#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"
#include "storen/protocol/digest.hpp"

namespace storen {

/// A prover's answer to challenge beta; nullopt value means it did not respond.
struct Response {
  std::uint64_t beta = 1;
  std::optional<std::uint64_t> value;

  static Response answer(std::uint64_t beta, std::uint64_t value) { return {beta, value}; }
  static Response silent(std::uint64_t beta) { return {beta, std::nullopt}; }
};

enum class Outcome { Accepted, Rejected, Undecidable };

const char* to_string(Outcome o) noexcept;

/// Prover indices in accused/erased are 1-based.
struct Verdict {
  Outcome outcome = Outcome::Rejected;
  std::set<std::size_t> accused;
  std::set<std::size_t> erased;

  bool accepted() const noexcept { return outcome == Outcome::Accepted; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Partition of [k] into s equal contiguous chunks. Throws Usage unless s >= 1 divides k.
class ChunkPlan {
 public:
  ChunkPlan(std::uint64_t k, std::uint64_t s);

  std::uint64_t k() const noexcept { return k_; }
  std::uint64_t provers() const noexcept { return s_; }
  std::uint64_t chunk_length() const noexcept { return k_ / s_; }
  /// 0-based offset of prover i's chunk (i 1-based).
  std::uint64_t offset(std::uint64_t prover) const;

 private:
  std::uint64_t k_;
  std::uint64_t s_;
};

/// x_i: prover i's symbols of a Polynomial message.
Message chunk_of(const Message& x, const ChunkPlan& plan, std::uint64_t prover);
/// x̂_i: x_i zero-extended back to length k.
Message zero_extended_chunk(const Message& x, const ChunkPlan& plan, std::uint64_t prover);

/// Uniform beta in [1, n] from the documented generator.
std::uint64_t draw_challenge(std::uint64_t seed, std::uint64_t n);

// Single prover: store (beta, h_beta(x)).
Digest single_preprocess_at(const HashFamily& fam, const Message& x, std::uint64_t beta);
Digest single_preprocess(const HashFamily& fam, const Message& x, std::uint64_t seed);
Verdict single_verify(const HashFamily& fam, const Digest& digest, const Response& response);

// s provers, one hash per chunk: store (beta, H(x_1)_beta, ..., H(x_s)_beta) under the chunk family.
Digest multi_trivial_preprocess_at(const HashFamily& chunk_fam, std::span<const Message> chunks, std::uint64_t beta);
Digest multi_trivial_preprocess(const HashFamily& chunk_fam, std::span<const Message> chunks, std::uint64_t seed);
/// Splits a Polynomial message by the plan; chunk_fam.k() must equal the chunk length.
Digest multi_trivial_preprocess(const HashFamily& chunk_fam, const Message& x, const ChunkPlan& plan,
                                std::uint64_t seed);
Verdict multi_trivial_verify(const HashFamily& chunk_fam, const Digest& digest, std::span<const Response> responses);

// s provers, linear code: store (beta, H(x)_beta); accept iff the answers sum to it.
Digest multi_linear_preprocess_at(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t beta);
Digest multi_linear_preprocess(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t seed);
Verdict multi_linear_verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses);

// s provers with cheater identification: store the 2r+e parity symbols of RS(v),
// v_i = H(x̂_i)_beta, for a systematic RS code of length 2r+e+s over the family's field.
Digest multi_rs_preprocess_at(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t r,
                              std::uint64_t e, std::uint64_t beta);
Digest multi_rs_preprocess(const HashFamily& fam, const Message& x, const ChunkPlan& plan, std::uint64_t r,
                           std::uint64_t e, std::uint64_t seed);
/// Undecidable when the answers fall outside the decoding budget.
Verdict multi_rs_verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses);

/// Dispatch on digest.variant. For Trivial, fam is the chunk family.
Verdict verify(const HashFamily& fam, const Digest& digest, std::span<const Response> responses);

/// What an honest prover holding `held` answers (held = x, x_i, or x̂_i per variant).
std::uint64_t honest_answer(const HashFamily& fam, const Message& held, std::uint64_t beta);

}  // namespace storen
