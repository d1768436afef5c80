#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"
#include "storen/protocol/rng.hpp"

namespace storen {

struct ProverStrategy;

/// Keeps its whole input.
struct Honest {};
/// Keeps the first t symbols of its codeword; guesses uniformly elsewhere.
struct PartialCodeword {
  std::uint64_t t = 0;
};
/// Keeps the first t message symbols; answers as if the rest were zero.
struct PartialRaw {
  std::uint64_t t = 0;
};
/// Keeps nothing, answers a uniform residue.
struct UniformGuesser {};
/// Keeps nothing, answers 0.
struct ZeroAnswerer {};

enum class SilenceMode { ExplicitNoResponse, Timeout };

/// Honest store, but withholds its answer with the given probability per challenge.
struct Unresponsive {
  double probability = 1.0;
  SilenceMode mode = SilenceMode::ExplicitNoResponse;
};

/// Provers listed in `members` (1-based) run `inner`; everyone else is honest.
struct Colluding {
  std::set<std::size_t> members;
  std::shared_ptr<const ProverStrategy> inner;
};

struct ProverStrategy {
  std::variant<Honest, PartialCodeword, PartialRaw, UniformGuesser, ZeroAnswerer, Unresponsive, Colluding> kind;
};

/// Parses honest | partial:<t> | partial-codeword:<t> | partial-raw:<t> | uniform | zero |
/// silent | silent-timeout | unresponsive:<probability>. Throws Usage otherwise.
ProverStrategy parse_strategy(const std::string& text);
std::string describe(const ProverStrategy& s);

/// Per-prover strategies for s provers (Colluding expands, everything else is shared).
std::vector<ProverStrategy> assign_strategies(const ProverStrategy& s, std::size_t provers);

/// What a prover holds and what it is asked to hash. `held` is the message the honest
/// answer is computed from (x, x_i, or the zero-extended x̂_i); only the symbols in
/// [offset, offset + length) belong to the prover, the rest are known zeros.
struct ProverInput {
  const HashFamily* fam = nullptr;
  const Message* held = nullptr;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;  // 0 means the whole message

  static ProverInput whole(const HashFamily& fam, const Message& x) { return {&fam, &x, 0, 0}; }
};

/// The prover's retained string y together with its answering algorithm. Answers are
/// computed from y and public parameters only.
class ProverStore {
 public:
  /// Throws Usage if a parameter (t) is out of range or the strategy does not apply to the family.
  static ProverStore build(const ProverStrategy& strategy, const ProverInput& input);

  /// nullopt means no response.
  std::optional<std::uint64_t> answer(std::uint64_t beta, Rng& rng) const;

  /// Canonical serialization of y: u32 tag, u32 count, then bit-packed symbols.
  const std::vector<std::uint8_t>& retained() const noexcept { return y_; }
  std::size_t retained_bits() const noexcept { return retained_bits_; }
  /// Withheld answers should be modelled as silence past the verifier's deadline.
  bool silence_times_out() const noexcept { return silence_ == SilenceMode::Timeout; }
  std::string description() const { return description_; }

 private:
  enum class Tag : std::uint32_t { Honest = 0, PartialCodeword, PartialRaw, Uniform, Zero };

  ProverStore() = default;
  void serialize(unsigned width);

  Tag tag_ = Tag::Honest;
  const HashFamily* fam_ = nullptr;
  std::uint64_t offset_ = 0;
  std::vector<std::uint64_t> kept_;  // parsed content of y
  BigNat kept_natural_;              // KarpRabin honest store
  double silence_probability_ = 0.0;
  SilenceMode silence_ = SilenceMode::ExplicitNoResponse;
  std::vector<std::uint8_t> y_;
  std::size_t retained_bits_ = 0;
  std::string description_;
};

/// Bits of the fixed y header (tag + count).
inline constexpr std::size_t kStoreHeaderBits = 64;

}  // namespace storen
