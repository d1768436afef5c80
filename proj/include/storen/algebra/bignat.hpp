#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "storen/algebra/field_element.hpp"

namespace storen {

/// Arbitrary-precision natural number, base 2^32 limbs, little-endian, no trailing zero limb.
/// Only the operations the CRT message space needs.
class BigNat {
 public:
  using Limb = std::uint32_t;
  static constexpr unsigned kLimbBits = 32;

  BigNat() = default;
  BigNat(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  static BigNat from_limbs(std::vector<Limb> little_endian);
  static BigNat from_bytes_be(std::span<const std::uint8_t> bytes);
  static BigNat from_decimal(const std::string& digits);

  const std::vector<Limb>& limbs() const noexcept { return limbs_; }

  /// Base-2^32 digits, most significant first; empty for zero.
  std::vector<Limb> digits_msb_first() const;
  std::vector<std::uint8_t> to_bytes_be() const;
  std::string to_decimal() const;

  bool is_zero() const noexcept { return limbs_.empty(); }
  std::size_t bit_length() const noexcept;
  /// Throws Usage if the value does not fit.
  std::uint64_t to_u64() const;

  BigNat& mul_small(std::uint64_t factor);
  BigNat& add_small(std::uint64_t addend);
  /// Returns the remainder, replaces *this by the quotient. divisor != 0, divisor < 2^32.
  std::uint32_t divmod_small(std::uint32_t divisor);

  friend BigNat operator*(BigNat a, std::uint64_t f) { return a.mul_small(f); }
  friend BigNat operator+(BigNat a, std::uint64_t f) { return a.add_small(f); }
  friend BigNat operator+(const BigNat& a, const BigNat& b);
  friend BigNat operator*(const BigNat& a, const BigNat& b);

  friend bool operator==(const BigNat&, const BigNat&) = default;
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b);

 private:
  void trim() noexcept;

  std::vector<Limb> limbs_;
};

/// x mod p from the base-2^32 digits of x (most significant first) with O(1) state.
/// Throws MalformedInput on a digit >= 2^32.
FieldElement bignat_mod_stream(std::span<const std::uint64_t> digits_msb_first, PrimeModulus p);

/// Incremental form of bignat_mod_stream.
class ModStreamReducer {
 public:
  explicit ModStreamReducer(PrimeModulus p) noexcept : p_(p), shift_(pow_mod(2, 32, p.value())) {}

  void push(std::uint64_t digit);
  FieldElement value() const noexcept { return {acc_, p_}; }

 private:
  PrimeModulus p_;
  std::uint64_t shift_;
  std::uint64_t acc_ = 0;
};

/// x mod p for a whole BigNat.
std::uint64_t mod_small(const BigNat& x, std::uint64_t p) noexcept;

}  // namespace storen
