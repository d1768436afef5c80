#pragma once

#include <cstdint>
#include <ostream>

#include "storen/algebra/prime_modulus.hpp"

namespace storen {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  const std::uint64_t s = a + b;  // p < 2^62, no overflow
  return s >= p ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept;

/// Residue of a prime field, always held in canonical form 0 <= value < p.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, PrimeModulus modulus) noexcept
      : value_(value % modulus.value()), modulus_(modulus) {}

  static FieldElement zero(PrimeModulus m) noexcept { return {0, m}; }
  static FieldElement one(PrimeModulus m) noexcept { return {1, m}; }

  std::uint64_t value() const noexcept { return value_; }
  PrimeModulus modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  FieldElement operator-() const noexcept;

  /// Throws Domain for zero.
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const noexcept;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void check_same_field(const FieldElement& rhs) const;

  std::uint64_t value_;
  PrimeModulus modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
  return os << e.value() << " (mod " << e.modulus().value() << ")";
}

}  // namespace storen
