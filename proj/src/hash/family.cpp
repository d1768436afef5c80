#include "storen/hash/family.hpp"

#include <openssl/sha.h>

#include <cmath>
#include <numeric>

#include "storen/algebra/primes.hpp"
#include "storen/error.hpp"

namespace storen {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
  return v;
}

constexpr std::size_t kEncodingSize = 1 + 8 + 8 + 8;
// Bounds the KarpRabin sieve and the Polynomial field so encodings stay cheap to derive.
constexpr std::uint64_t kMaxFamilySize = std::uint64_t{1} << 26;

}  // namespace

const char* to_string(FamilyKind kind) noexcept {
  return kind == FamilyKind::Polynomial ? "polynomial" : "karp-rabin";
}

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  require(den != 0, ErrorKind::Domain, "rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
  const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
  return lhs <=> rhs;
}

HashFamily HashFamily::polynomial(std::uint64_t k, std::uint64_t n, PrimeModulus q) {
  require(k >= 1 && n >= k, ErrorKind::Parameter, "family requires n >= k >= 1");
  require(n <= q.value(), ErrorKind::Parameter, "polynomial family requires n <= q distinct points");
  HashFamily f;
  f.kind_ = FamilyKind::Polynomial;
  f.k_ = k;
  f.n_ = n;
  f.q_ = q.value();
  f.space_size_ = BigNat(1);
  for (std::uint64_t i = 0; i < k; ++i) f.space_size_.mul_small(f.q_);
  f.finalize();
  return f;
}

HashFamily HashFamily::karp_rabin(std::uint64_t k, std::uint64_t n) {
  require(k >= 1 && n >= k, ErrorKind::Parameter, "family requires n >= k >= 1");
  require(n <= kMaxFamilySize, ErrorKind::Capacity, "karp-rabin family too large");
  HashFamily f;
  f.kind_ = FamilyKind::KarpRabin;
  f.k_ = k;
  f.n_ = n;
  f.primes_ = first_n_prime_values(n);
  BigNat bound(1);
  for (std::uint64_t i = 0; i < k; ++i) bound.mul_small(f.primes_[i]);
  // Largest message is bound - 1 (bound >= 2): borrow through the limbs.
  f.space_size_ = bound;
  auto limbs = bound.limbs();
  for (auto& limb : limbs) {
    if (limb-- != 0) break;
  }
  const auto digits = BigNat::from_limbs(std::move(limbs)).digits_msb_first();
  f.bound_digits_.assign(digits.begin(), digits.end());
  f.max_digits_ = digits.size();
  f.finalize();
  return f;
}

PrimeModulus HashFamily::field() const {
  require(kind_ == FamilyKind::Polynomial, ErrorKind::Unsupported, "karp-rabin family has no single field");
  return PrimeModulus::trusted(q_);
}

PrimeModulus HashFamily::coordinate_modulus(std::uint64_t index) const {
  require(index >= 1 && index <= n_, ErrorKind::Usage, "hash index out of range");
  return PrimeModulus::trusted(kind_ == FamilyKind::Polynomial ? q_ : primes_[index - 1]);
}

PrimeModulus HashFamily::max_modulus() const noexcept {
  return PrimeModulus::trusted(kind_ == FamilyKind::Polynomial ? q_ : primes_.back());
}

std::uint64_t HashFamily::alphabet_sum() const noexcept {
  if (kind_ == FamilyKind::Polynomial) return q_ * n_;
  return std::accumulate(primes_.begin(), primes_.end(), std::uint64_t{0});
}

std::vector<std::uint8_t> HashFamily::canonical_encoding() const {
  std::vector<std::uint8_t> out;
  out.reserve(kEncodingSize);
  out.push_back(static_cast<std::uint8_t>(kind_));
  put_u64(out, k_);
  put_u64(out, n_);
  put_u64(out, kind_ == FamilyKind::Polynomial ? q_ : primes_.size());
  return out;
}

HashFamily HashFamily::decode(std::span<const std::uint8_t> bytes) {
  require(bytes.size() == kEncodingSize, ErrorKind::MalformedInput, "descriptor encoding has wrong length");
  const std::uint64_t k = get_u64(bytes, 1);
  const std::uint64_t n = get_u64(bytes, 9);
  const std::uint64_t last = get_u64(bytes, 17);
  try {
    switch (bytes[0]) {
      case 0: return polynomial(k, n, PrimeModulus(last));
      case 1:
        require(last == n, ErrorKind::MalformedInput, "karp-rabin prime count must equal n");
        return karp_rabin(k, n);
      default: break;
    }
  } catch (const Error& e) {
    fail(ErrorKind::MalformedInput, std::string("descriptor: ") + e.what());
  }
  fail(ErrorKind::MalformedInput, "descriptor: unknown family kind");
}

void HashFamily::finalize() {
  const auto bytes = canonical_encoding();
  SHA256(bytes.data(), bytes.size(), fingerprint_.data());
}

std::uint64_t family_size_for(std::uint64_t k, double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::Usage, "epsilon must lie in (0, 1)");
  require(k >= 1, ErrorKind::Usage, "k must be positive");
  const double exact = static_cast<double>(k) / (epsilon * epsilon);
  require(exact <= static_cast<double>(kMaxFamilySize), ErrorKind::Usage, "k/epsilon^2 exceeds supported family size");
  // k/eps^2 of an exactly representable target (e.g. 1/0.1^2) can land a few ulps above an integer.
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) <= 1e-9 * exact) return static_cast<std::uint64_t>(rounded);
  return static_cast<std::uint64_t>(std::ceil(exact));
}

HashFamily derive_family(FamilyKind kind, std::uint64_t k, double epsilon) {
  const std::uint64_t n = family_size_for(k, epsilon);
  HashFamily f = kind == FamilyKind::Polynomial ? HashFamily::polynomial(k, n, PrimeModulus(next_prime(n)))
                                                : HashFamily::karp_rabin(k, n);
  f.set_epsilon_target(epsilon);
  return f;
}

}  // namespace storen
