#include "storen/algebra/field_element.hpp"

#include <bit>

#include "storen/algebra/primes.hpp"
#include "storen/error.hpp"

namespace storen {

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  require(p < kModulusLimit, ErrorKind::Usage, "modulus must be below 2^62");
  require(is_prime(p), ErrorKind::Usage, "modulus must be prime");
}

unsigned PrimeModulus::residue_bits() const noexcept { return ceil_log2(p_); }

unsigned ceil_log2(std::uint64_t x) noexcept {
  if (x <= 1) return 0;
  return 64u - static_cast<unsigned>(std::countl_zero(x - 1));
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

void FieldElement::check_same_field(const FieldElement& rhs) const {
  if (modulus_ != rhs.modulus_) fail(ErrorKind::Usage, "field elements from different moduli");
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_same_field(rhs);
  value_ = add_mod(value_, rhs.value_, modulus_.value());
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  check_same_field(rhs);
  value_ = sub_mod(value_, rhs.value_, modulus_.value());
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_same_field(rhs);
  value_ = mul_mod(value_, rhs.value_, modulus_.value());
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

FieldElement FieldElement::operator-() const noexcept {
  return {value_ == 0 ? 0 : modulus_.value() - value_, modulus_};
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) fail(ErrorKind::Domain, "inverse of zero");
  return {pow_mod(value_, modulus_.value() - 2, modulus_.value()), modulus_};
}

FieldElement FieldElement::pow(std::uint64_t exponent) const noexcept {
  return {pow_mod(value_, exponent, modulus_.value()), modulus_};
}

}  // namespace storen
