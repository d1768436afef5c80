#include <doctest.h>

#include <random>

#include "storen/algebra/bignat.hpp"
#include "storen/algebra/field_element.hpp"
#include "storen/algebra/linear_system.hpp"
#include "storen/algebra/polynomial.hpp"
#include "storen/algebra/primes.hpp"
#include "storen/error.hpp"

using namespace storen;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected storen::Error");
  return ErrorKind::Io;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("field arithmetic examples") {
  const PrimeModulus five(5);
  CHECK((FieldElement(3, five) + FieldElement(4, five)).value() == 2);
  CHECK(FieldElement(2, five).inverse().value() == 3);
  CHECK(FieldElement(3, PrimeModulus(7)).pow(6).value() == 1);
  CHECK((FieldElement(1, five) - FieldElement(3, five)).value() == 3);
  CHECK((-FieldElement(0, five)).value() == 0);
}

TEST_CASE("field error paths") {
  const PrimeModulus five(5);
  CHECK(kind_of([&] { (void)FieldElement(0, five).inverse(); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { (void)(FieldElement(1, five) + FieldElement(1, PrimeModulus(7))); }) == ErrorKind::Usage);
  CHECK(kind_of([] { PrimeModulus bad(9); }) == ErrorKind::Usage);
  CHECK(kind_of([] { PrimeModulus big(kModulusLimit + 1); }) == ErrorKind::Usage);
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const PrimeModulus m(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      const FieldElement fa(a, m);
      if (a != 0) CHECK((fa * fa.inverse()).value() == 1);
      for (std::uint64_t b = 0; b < p; ++b) {
        const FieldElement fb(b, m);
        CHECK((fa + fb) - fb == fa);
        for (std::uint64_t c = 0; c < p; ++c) {
          const FieldElement fc(c, m);
          CHECK((fa + fb) + fc == fa + (fb + fc));
          CHECK(fa * (fb + fc) == fa * fb + fa * fc);
        }
      }
    }
  }
}

TEST_CASE("field axioms on random elements of a 61-bit field") {
  const PrimeModulus m((std::uint64_t{1} << 61) - 1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const FieldElement a(rng(), m), b(rng(), m), c(rng(), m);
    CHECK(a.value() < m.value());
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK((a * a.inverse()).value() == 1);
    CHECK(a.pow(m.value() - 1).value() == (a.is_zero() ? 0u : 1u));
  }
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(1031) == 11);
  CHECK(PrimeModulus(5).residue_bits() == 3);
}

TEST_CASE("horner evaluation examples") {
  const PrimeModulus five(5), seven(7);
  const std::vector<FieldElement> x{{1, five}, {2, five}};
  CHECK(poly_eval_horner(x, FieldElement(3, five)).value() == 2);
  CHECK(poly_eval_horner(x, FieldElement(0, five)).value() == 1);
  const std::vector<FieldElement> zero(3, FieldElement(0, seven));
  CHECK(poly_eval_horner(zero, FieldElement(4, seven)).value() == 0);
  CHECK(kind_of([&] { (void)poly_eval_horner({}, FieldElement(1, five)); }) == ErrorKind::Usage);
  CHECK(kind_of([&] { (void)poly_eval_horner(x, FieldElement(1, seven)); }) == ErrorKind::Usage);
}

TEST_CASE("horner matches the naive power sum exhaustively over GF(5), k <= 3") {
  const PrimeModulus five(5);
  for (std::size_t k = 1; k <= 3; ++k) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 5;
    for (std::uint64_t r = 0; r < total; ++r) {
      std::vector<FieldElement> coeffs;
      std::uint64_t s = r;
      for (std::size_t i = 0; i < k; ++i, s /= 5) coeffs.emplace_back(s % 5, five);
      for (std::uint64_t point = 0; point < 5; ++point) {
        std::uint64_t naive = 0;
        for (std::size_t i = 0; i < k; ++i) {
          std::uint64_t power = 1;
          for (std::size_t e = 0; e < i; ++e) power = power * point;
          naive += coeffs[i].value() * power;
        }
        CHECK(poly_eval_horner(coeffs, FieldElement(point, five)).value() == naive % 5);
      }
    }
  }
}

TEST_CASE("primality and prime generation") {
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
  CHECK(is_prime((std::uint64_t{1} << 61) - 1));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(next_prime(4) == 5);
  CHECK(next_prime(1024) == 1031);
  CHECK(next_prime(0) == 2);

  const auto five = first_n_prime_values(5);
  CHECK(five == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  CHECK(first_n_prime_values(1) == std::vector<std::uint64_t>{2});
  CHECK(first_n_primes(25).back().value() == 97);
  CHECK(kind_of([] { (void)first_n_primes(0); }) == ErrorKind::Usage);

  // Oracle: consecutive trial-division primes.
  const auto many = first_n_prime_values(3000);
  std::uint64_t candidate = 1;
  for (std::uint64_t p : many) {
    do ++candidate;
    while (!trial_division_prime(candidate));
    REQUIRE(p == candidate);
  }
}

TEST_CASE("last of the first n primes is at most 2 n log2 n") {
  for (std::size_t n = 4; n <= 5000; n += 37) {
    const auto primes = first_n_prime_values(n);
    CHECK(static_cast<double>(primes.back()) <= 2.0 * n * std::log2(static_cast<double>(n)));
  }
}

TEST_CASE("streaming modular reduction examples") {
  const std::vector<std::uint64_t> ten{10};
  CHECK(bignat_mod_stream(ten, PrimeModulus(3)).value() == 1);
  CHECK(bignat_mod_stream({}, PrimeModulus(7)).value() == 0);
  // 2^64 = digits (1, 0, 0) in base 2^32. Oracle: 2^64 mod 5 by repeated squaring of 2.
  std::uint64_t oracle = 2;
  for (int i = 0; i < 6; ++i) oracle = oracle * oracle % 5;
  const std::vector<std::uint64_t> two64{1, 0, 0};
  CHECK(bignat_mod_stream(two64, PrimeModulus(5)).value() == oracle);
  CHECK(oracle == 1);
  const std::vector<std::uint64_t> bad{std::uint64_t{1} << 32};
  CHECK(kind_of([&] { (void)bignat_mod_stream(bad, PrimeModulus(5)); }) == ErrorKind::MalformedInput);
}

namespace {

// Binary long division of a big-endian bit string by p.
std::uint64_t schoolbook_mod(const std::vector<bool>& bits_msb_first, std::uint64_t p) {
  unsigned __int128 rem = 0;
  for (bool b : bits_msb_first) {
    rem = (rem << 1) | (b ? 1 : 0);
    if (rem >= p) rem -= p;
  }
  return static_cast<std::uint64_t>(rem);
}

}  // namespace

TEST_CASE("streaming reduction agrees with long division on random 4096-bit values") {
  std::mt19937_64 rng(11);
  const std::vector<std::uint64_t> moduli{2, 3, 65537, 1000000007, (std::uint64_t{1} << 61) - 1, 4611686018427387847ull};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t nbits = 1 + rng() % 4096;
    std::vector<bool> bits(nbits);
    for (auto&& b : bits) b = rng() & 1;
    // Pack into base-2^32 digits, most significant first.
    std::vector<std::uint64_t> digits((nbits + 31) / 32, 0);
    for (std::size_t i = 0; i < nbits; ++i) {
      const std::size_t from_lsb = nbits - 1 - i;
      if (bits[i]) digits[digits.size() - 1 - from_lsb / 32] |= std::uint64_t{1} << (from_lsb % 32);
    }
    for (std::uint64_t p : moduli) {
      CHECK(bignat_mod_stream(digits, PrimeModulus(p)).value() == schoolbook_mod(bits, p));
      BigNat x = BigNat::from_limbs({});
      for (std::uint64_t d : digits) x = x * (std::uint64_t{1} << 32) + d;
      CHECK(mod_small(x, p) == schoolbook_mod(bits, p));
    }
  }
}

TEST_CASE("bignat basics") {
  CHECK(BigNat().is_zero());
  CHECK(BigNat(0).limbs().empty());
  const BigNat x = BigNat::from_decimal("340282366920938463463374607431768211457");  // 2^128 + 1
  CHECK(x.bit_length() == 129);
  CHECK(x.to_decimal() == "340282366920938463463374607431768211457");
  CHECK(BigNat::from_bytes_be(x.to_bytes_be()) == x);
  CHECK(BigNat(5) < BigNat(7));
  CHECK(BigNat(std::uint64_t{1} << 40) > BigNat(7));
  CHECK((BigNat(6) * BigNat(7)).to_u64() == 42);
  CHECK((BigNat(0xFFFFFFFFull) + BigNat(1)).to_u64() == 0x100000000ull);
  const std::vector<std::uint8_t> padded{0, 0, 1, 2};
  CHECK(BigNat::from_bytes_be(padded).to_u64() == 0x102);
  CHECK(kind_of([&] { (void)x.to_u64(); }) == ErrorKind::Usage);
}

TEST_CASE("modular linear solve") {
  // x + y = 3, x - y = 1 over GF(7) -> x = 2, y = 1.
  ModMatrix a(2, 2);
  a(0, 0) = 1; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 6;
  const auto u = solve_mod(a, {3, 1}, 7);
  REQUIRE(u);
  CHECK(*u == std::vector<std::uint64_t>{2, 1});

  ModMatrix singular(2, 2);
  singular(0, 0) = 1; singular(0, 1) = 1;
  singular(1, 0) = 2; singular(1, 1) = 2;
  CHECK_FALSE(solve_mod(singular, {1, 3}, 7));
  CHECK(solve_mod(singular, {1, 2}, 7));
}
