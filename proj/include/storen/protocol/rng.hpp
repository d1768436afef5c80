#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace storen {

/// Identifier of the generator pipeline; echoed in experiment reports and CLI output.
inline constexpr std::string_view kPrngId = "mt19937_64/splitmix64-v1";

/// SplitMix64 finaliser; used to derive independent stream seeds from (master, stream).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

/// std::mt19937_64 with a portable bounded draw (std::uniform_int_distribution is
/// implementation-defined, which would make transcripts differ across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t master, std::uint64_t stream) { return Rng(derive_seed(master, stream)); }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound >= 1, by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;  // 2^64 mod bound
    std::uint64_t v;
    do v = engine_();
    while (v < threshold);
    return v % bound;
  }

  /// Uniform challenge index in [1, n].
  std::uint64_t index(std::uint64_t n) { return 1 + below(n); }

  /// Bernoulli(p).
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace storen
