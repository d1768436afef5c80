#include "storen/algebra/primes.hpp"

#include <array>
#include <cmath>

#include "storen/algebra/field_element.hpp"
#include "storen/algebra/prime_modulus.hpp"
#include "storen/error.hpp"

namespace storen {

namespace {

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) noexcept {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Rosser-Schoenfeld: p_n < n (ln n + ln ln n) for n >= 6.
std::uint64_t nth_prime_upper_bound(std::size_t n) {
  if (n < 6) return 13;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

constexpr std::size_t kMaxPrimeCount = std::size_t{1} << 26;

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  for (std::uint64_t c = n | 1; c < kModulusLimit; c += 2) {
    if (is_prime(c)) return c;
  }
  fail(ErrorKind::Usage, "next_prime: no prime below 2^62 at or above the request");
}

std::vector<std::uint64_t> first_n_prime_values(std::size_t n) {
  require(n >= 1, ErrorKind::Usage, "first_n_primes: n must be positive");
  require(n <= kMaxPrimeCount, ErrorKind::Capacity, "first_n_primes: n too large to sieve");
  const std::uint64_t bound = nth_prime_upper_bound(n);
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::uint64_t i = 2; i <= bound && out.size() < n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<PrimeModulus> first_n_primes(std::size_t n) {
  std::vector<PrimeModulus> out;
  const auto values = first_n_prime_values(n);
  out.reserve(values.size());
  for (std::uint64_t p : values) out.push_back(PrimeModulus::trusted(p));
  return out;
}

}  // namespace storen
