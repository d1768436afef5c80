#include "storen/algebra/bignat.hpp"

#include <algorithm>
#include <bit>

#include "storen/error.hpp"

namespace storen {

BigNat::BigNat(std::uint64_t v) {
  while (v != 0) {
    limbs_.push_back(static_cast<Limb>(v));
    v >>= kLimbBits;
  }
}

void BigNat::trim() noexcept {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::from_limbs(std::vector<Limb> little_endian) {
  BigNat out;
  out.limbs_ = std::move(little_endian);
  out.trim();
  return out;
}

BigNat BigNat::from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigNat out;
  out.limbs_.assign((bytes.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const std::size_t from_lsb = bytes.size() - 1 - i;
    out.limbs_[from_lsb / 4] |= static_cast<Limb>(bytes[i]) << (8 * (from_lsb % 4));
  }
  out.trim();
  return out;
}

BigNat BigNat::from_decimal(const std::string& digits) {
  require(!digits.empty(), ErrorKind::MalformedInput, "empty decimal string");
  BigNat out;
  for (char ch : digits) {
    require(ch >= '0' && ch <= '9', ErrorKind::MalformedInput, "non-digit in decimal string");
    out.mul_small(10).add_small(static_cast<std::uint64_t>(ch - '0'));
  }
  return out;
}

std::vector<BigNat::Limb> BigNat::digits_msb_first() const {
  return {limbs_.rbegin(), limbs_.rend()};
}

std::vector<std::uint8_t> BigNat::to_bytes_be() const {
  std::vector<std::uint8_t> out;
  for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(*it >> shift));
  }
  const auto first = std::find_if(out.begin(), out.end(), [](std::uint8_t b) { return b != 0; });
  out.erase(out.begin(), first);
  return out;
}

std::string BigNat::to_decimal() const {
  if (is_zero()) return "0";
  BigNat tmp = *this;
  std::string out;
  while (!tmp.is_zero()) out.push_back(static_cast<char>('0' + tmp.divmod_small(10)));
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t BigNat::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  return (limbs_.size() - 1) * kLimbBits + (kLimbBits - static_cast<unsigned>(std::countl_zero(limbs_.back())));
}

std::uint64_t BigNat::to_u64() const {
  require(limbs_.size() <= 2, ErrorKind::Usage, "BigNat does not fit in 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << kLimbBits) | limbs_[i];
  return v;
}

BigNat& BigNat::mul_small(std::uint64_t factor) {
  if (factor == 0 || is_zero()) {
    limbs_.clear();
    return *this;
  }
  return *this = *this * BigNat(factor);
}

BigNat& BigNat::add_small(std::uint64_t addend) {
  unsigned __int128 carry = addend;
  for (std::size_t i = 0; carry != 0; ++i) {
    if (i == limbs_.size()) limbs_.push_back(0);
    carry += limbs_[i];
    limbs_[i] = static_cast<Limb>(carry);
    carry >>= kLimbBits;
  }
  return *this;
}

std::uint32_t BigNat::divmod_small(std::uint32_t divisor) {
  require(divisor != 0, ErrorKind::Domain, "division by zero");
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const std::uint64_t cur = (rem << kLimbBits) | limbs_[i];
    limbs_[i] = static_cast<Limb>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

BigNat operator+(const BigNat& a, const BigNat& b) {
  const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
  const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
  std::vector<BigNat::Limb> out(x.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    carry += static_cast<std::uint64_t>(x[i]) + (i < y.size() ? y[i] : 0);
    out[i] = static_cast<BigNat::Limb>(carry);
    carry >>= BigNat::kLimbBits;
  }
  out[x.size()] = static_cast<BigNat::Limb>(carry);
  return BigNat::from_limbs(std::move(out));
}

BigNat operator*(const BigNat& a, const BigNat& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigNat::Limb> out(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      const std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + out[i + j] + carry;
      out[i + j] = static_cast<BigNat::Limb>(cur);
      carry = cur >> BigNat::kLimbBits;
    }
    for (std::size_t k = i + b.limbs_.size(); carry != 0; ++k) {
      const std::uint64_t cur = static_cast<std::uint64_t>(out[k]) + carry;
      out[k] = static_cast<BigNat::Limb>(cur);
      carry = cur >> BigNat::kLimbBits;
    }
  }
  return BigNat::from_limbs(std::move(out));
}

std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

void ModStreamReducer::push(std::uint64_t digit) {
  if (digit >> BigNat::kLimbBits) fail(ErrorKind::MalformedInput, "digit exceeds base 2^32");
  const std::uint64_t p = p_.value();
  acc_ = add_mod(mul_mod(acc_, shift_, p), digit % p, p);
}

FieldElement bignat_mod_stream(std::span<const std::uint64_t> digits_msb_first, PrimeModulus p) {
  ModStreamReducer reducer(p);
  for (std::uint64_t d : digits_msb_first) reducer.push(d);
  return reducer.value();
}

std::uint64_t mod_small(const BigNat& x, std::uint64_t p) noexcept {
  const std::uint64_t shift = pow_mod(2, BigNat::kLimbBits, p);
  std::uint64_t acc = 0;
  const auto& limbs = x.limbs();
  for (std::size_t i = limbs.size(); i-- > 0;) acc = add_mod(mul_mod(acc, shift, p), limbs[i] % p, p);
  return acc;
}

}  // namespace storen
