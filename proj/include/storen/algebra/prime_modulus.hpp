#pragma once

#include <cstdint>
#include <compare>

namespace storen {

inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 62;

/// A prime p with 2 <= p < 2^62, so that products of residues fit in 128 bits.
class PrimeModulus {
 public:
  /// Validates primality; throws Usage otherwise.
  explicit PrimeModulus(std::uint64_t p);

  /// Skips the primality check. Only for values produced by the prime generators.
  static PrimeModulus trusted(std::uint64_t p) noexcept { return PrimeModulus(p, Trusted{}); }

  std::uint64_t value() const noexcept { return p_; }

  /// Number of bits needed to write any residue, i.e. ceil(log2 p).
  unsigned residue_bits() const noexcept;

  friend bool operator==(PrimeModulus, PrimeModulus) = default;
  friend auto operator<=>(PrimeModulus, PrimeModulus) = default;

 private:
  struct Trusted {};
  PrimeModulus(std::uint64_t p, Trusted) noexcept : p_(p) {}

  std::uint64_t p_;
};

/// ceil(log2 x) for x >= 1; 0 for x <= 1.
unsigned ceil_log2(std::uint64_t x) noexcept;

}  // namespace storen
