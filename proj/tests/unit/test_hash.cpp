#include <doctest.h>

#include <algorithm>
#include <random>

#include "storen/codes/exhaustive.hpp"
#include "storen/hash/evaluate.hpp"
#include "storen/hash/family.hpp"
#include "test_support.hpp"

using namespace storen;
using storen::test::error_kind_of;

namespace {

Message poly_msg(std::initializer_list<std::uint64_t> xs, std::uint64_t q) {
  const std::vector<std::uint64_t> v(xs);
  return Message::symbols(v, PrimeModulus(q));
}

// Independent oracle: every pair of messages, every coordinate, through hash_eval.
Rational naive_collision_probability(const HashFamily& fam) {
  const MessageSpace space(fam);
  std::vector<Message> all;
  for (std::uint64_t r = 0; r < space.size(); ++r) all.push_back(space.message(r));
  std::uint64_t worst = 0;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      std::uint64_t agree = 0;
      for (std::uint64_t i = 1; i <= fam.n(); ++i) agree += hash_eval(fam, all[a], i) == hash_eval(fam, all[b], i);
      worst = std::max(worst, agree);
    }
  }
  return Rational::make(worst, fam.n());
}

}  // namespace

TEST_CASE("derive_family examples") {
  const auto poly = derive_family(FamilyKind::Polynomial, 2, 0.8);
  CHECK(poly.n() == 4);
  CHECK(poly.field().value() == 5);
  CHECK(poly.collision_bound() == Rational{1, 4});

  const auto kr = derive_family(FamilyKind::KarpRabin, 2, 0.75);
  CHECK(kr.n() == 4);
  CHECK(std::vector<std::uint64_t>(kr.primes().begin(), kr.primes().end()) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(kr.message_space_size().to_u64() == 6);

  const auto single = derive_family(FamilyKind::Polynomial, 1, 0.5);
  CHECK(single.collision_bound() == Rational{0, 1});

  CHECK(family_size_for(1, 0.1) == 100);
  CHECK(family_size_for(64, 0.25) == 1024);
  const auto big = derive_family(FamilyKind::Polynomial, 64, 0.25);
  CHECK(big.field().value() == 1031);
  CHECK(big.collision_bound() <= Rational{1, 16});

  CHECK(error_kind_of([] { (void)derive_family(FamilyKind::Polynomial, 2, 1.0); }) == ErrorKind::Usage);
  CHECK(error_kind_of([] { (void)derive_family(FamilyKind::Polynomial, 2, 0.0); }) == ErrorKind::Usage);
  CHECK(error_kind_of([] { (void)derive_family(FamilyKind::KarpRabin, 2, -0.5); }) == ErrorKind::Usage);
}

TEST_CASE("descriptor invariants") {
  CHECK(error_kind_of([] { (void)HashFamily::polynomial(2, 6, PrimeModulus(5)); }) == ErrorKind::Parameter);
  CHECK(error_kind_of([] { (void)HashFamily::polynomial(3, 2, PrimeModulus(5)); }) == ErrorKind::Parameter);
  CHECK(error_kind_of([] { (void)HashFamily::karp_rabin(0, 2); }) == ErrorKind::Parameter);
  const auto kr = HashFamily::karp_rabin(2, 4);
  CHECK(std::vector<std::uint64_t>(kr.message_primes().begin(), kr.message_primes().end()) ==
        std::vector<std::uint64_t>{2, 3});
  CHECK(kr.alphabet_sum() == 17);
  CHECK(kr.max_modulus().value() == 7);
}

TEST_CASE("descriptor canonical encoding and fingerprint") {
  const auto poly = HashFamily::polynomial(2, 4, PrimeModulus(5));
  CHECK(test::hex(poly.canonical_encoding()) == "00020000000000000004000000000000000500000000000000");
  CHECK(test::hex(poly.fingerprint()) == "55383fa565ef8e28103040c2a0ad3381cdc57f701222edf99cf22c2cdbd82649");
  const auto kr = HashFamily::karp_rabin(2, 4);
  CHECK(test::hex(kr.canonical_encoding()) == "01020000000000000004000000000000000400000000000000");
  CHECK(test::hex(kr.fingerprint()) == "b999778b3c66bbe490c8f17bb9650ac061d53c01ad07842ba6285c30b08acffe");
  CHECK(HashFamily::decode(poly.canonical_encoding()) == poly);
  CHECK(HashFamily::decode(kr.canonical_encoding()) == kr);

  auto bad = poly.canonical_encoding();
  bad[0] = 9;
  CHECK(error_kind_of([&] { (void)HashFamily::decode(bad); }) == ErrorKind::MalformedInput);
  bad = poly.canonical_encoding();
  bad[17] = 6;  // q = 6 is not prime
  CHECK(error_kind_of([&] { (void)HashFamily::decode(bad); }) == ErrorKind::MalformedInput);
  bad.pop_back();
  CHECK(error_kind_of([&] { (void)HashFamily::decode(bad); }) == ErrorKind::MalformedInput);
}

TEST_CASE("hash_eval examples") {
  const auto poly = HashFamily::polynomial(2, 5, PrimeModulus(5));
  CHECK(hash_eval(poly, poly_msg({1, 2}, 5), 4).value() == 2);
  const auto kr = HashFamily::karp_rabin(2, 4);
  const auto four = Message::natural(BigNat(4));
  CHECK(hash_eval(kr, four, 3).value() == 4);
  CHECK(hash_eval(kr, four, 3).modulus().value() == 5);
  for (std::uint64_t i = 1; i <= 5; ++i) CHECK(hash_eval(poly, zero_message(poly), i).value() == 0);
  for (std::uint64_t i = 1; i <= 4; ++i) CHECK(hash_eval(kr, zero_message(kr), i).value() == 0);

  CHECK(error_kind_of([&] { (void)hash_eval(poly, poly_msg({1, 2}, 5), 0); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)hash_eval(poly, poly_msg({1, 2}, 5), 6); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)hash_eval(poly, poly_msg({1, 2, 3}, 5), 1); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)hash_eval(poly, poly_msg({1, 2}, 7), 1); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)hash_eval(kr, Message::natural(BigNat(6)), 1); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)hash_eval(kr, poly_msg({1, 2}, 5), 1); }) == ErrorKind::Usage);
}

TEST_CASE("streaming evaluation examples") {
  const auto poly = HashFamily::polynomial(2, 5, PrimeModulus(5));
  const std::vector<std::uint64_t> x12{1, 2};
  CHECK(hash_eval_stream(poly, x12, 4).value() == 2);
  const auto kr = HashFamily::karp_rabin(2, 4);
  const std::vector<std::uint64_t> four{4};
  CHECK(hash_eval_stream(kr, four, 3).value() == 4);
  CHECK(hash_eval_stream(kr, std::vector<std::uint64_t>{}, 2).value() == 0);

  const auto poly7 = HashFamily::polynomial(3, 7, PrimeModulus(7));
  const std::vector<std::uint64_t> x123{1, 2, 3};
  CHECK(hash_eval_stream(poly7, x123, 3).value() == 3);  // point 2: 1 + 4 + 12 = 17 = 3 mod 7

  CHECK(error_kind_of([&] { (void)hash_eval_stream(poly, std::vector<std::uint64_t>{1}, 1); }) ==
        ErrorKind::MalformedInput);
  CHECK(error_kind_of([&] { (void)hash_eval_stream(poly, std::vector<std::uint64_t>{1, 2, 3}, 1); }) ==
        ErrorKind::MalformedInput);
  CHECK(error_kind_of([&] { (void)hash_eval_stream(poly, std::vector<std::uint64_t>{1, 5}, 1); }) ==
        ErrorKind::MalformedInput);
  CHECK(error_kind_of([&] { (void)hash_eval_stream(kr, std::vector<std::uint64_t>{6}, 1); }) ==
        ErrorKind::MalformedInput);
  CHECK(error_kind_of([&] { (void)hash_eval_stream(kr, std::vector<std::uint64_t>{0, 1}, 1); }) ==
        ErrorKind::MalformedInput);
  CHECK(hash_eval_stream(kr, std::vector<std::uint64_t>{5}, 4).value() == 5);
}

TEST_CASE("streaming equals batch exhaustively on tiny families") {
  for (const auto& fam : {HashFamily::polynomial(2, 5, PrimeModulus(5)), HashFamily::polynomial(3, 7, PrimeModulus(7)),
                          HashFamily::karp_rabin(2, 4), HashFamily::karp_rabin(3, 6)}) {
    const MessageSpace space(fam);
    for (std::uint64_t r = 0; r < space.size(); ++r) {
      const Message x = space.message(r);
      for (std::uint64_t i = 1; i <= fam.n(); ++i) {
        const auto batch = hash_eval(fam, x, i);
        const auto streamed = x.is_symbols() ? hash_eval_stream(fam, x.symbol_values(), i)
                                             : hash_eval_stream(fam, x.as_natural().digits_msb_first(), i);
        REQUIRE(batch == streamed);
      }
    }
  }
}

TEST_CASE("streaming equals batch on random large inputs") {
  std::mt19937_64 rng(3);
  const auto poly = derive_family(FamilyKind::Polynomial, 64, 0.25);
  const auto kr = derive_family(FamilyKind::KarpRabin, 40, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> xs(64);
    for (auto& v : xs) v = rng() % poly.field().value();
    const auto x = Message::symbols(xs, poly.field());
    const std::uint64_t i = 1 + rng() % poly.n();
    CHECK(hash_eval_stream(poly, xs, i) == hash_eval(poly, x, i));

    std::vector<std::uint32_t> limbs(kr.max_message_digits());
    for (auto& l : limbs) l = static_cast<std::uint32_t>(rng());
    limbs.back() %= kr.message_bound_digits().front();
    const auto nat = Message::natural(BigNat::from_limbs(limbs));
    const std::uint64_t j = 1 + rng() % kr.n();
    CHECK(hash_eval_stream(kr, nat.as_natural().digits_msb_first(), j) == hash_eval(kr, nat, j));
  }
}

TEST_CASE("collision probability examples and naive oracle") {
  const auto p552 = HashFamily::polynomial(2, 5, PrimeModulus(5));
  CHECK(collision_probability_exact(p552) == Rational{1, 5});
  CHECK(naive_collision_probability(p552) == Rational{1, 5});

  const auto p771 = HashFamily::polynomial(1, 7, PrimeModulus(7));
  CHECK(collision_probability_exact(p771) == Rational{0, 1});

  const auto kr = HashFamily::karp_rabin(2, 4);
  CHECK(collision_probability_exact(kr) == naive_collision_probability(kr));
  CHECK(collision_probability_exact(kr) == Rational{1, 4});

  CHECK(error_kind_of([] { (void)collision_probability_exact(HashFamily::polynomial(9, 10, PrimeModulus(11))); }) ==
        ErrorKind::Capacity);
}

TEST_CASE("almost universality at every enumerable size") {
  for (std::uint64_t q : {3, 5, 7}) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      for (std::uint64_t n = k; n <= q; ++n) {
        const auto fam = HashFamily::polynomial(k, n, PrimeModulus(q));
        const auto exact = collision_probability_exact(fam);
        CHECK(exact <= fam.collision_bound());
        if (n <= 5 && q <= 5) CHECK(exact == naive_collision_probability(fam));
      }
    }
  }
  for (std::uint64_t k = 1; k <= 4; ++k) {
    for (std::uint64_t n = k; n <= 9; ++n) {
      const auto fam = HashFamily::karp_rabin(k, n);
      CHECK(collision_probability_exact(fam) <= fam.collision_bound());
      if (k <= 3) CHECK(collision_probability_exact(fam) == naive_collision_probability(fam));
    }
  }
}

TEST_CASE("polynomial family is linear") {
  const auto fam = HashFamily::polynomial(3, 7, PrimeModulus(7));
  const MessageSpace space(fam);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = space.message(rng() % space.size()).as_symbols();
    const auto y = space.message(rng() % space.size()).as_symbols();
    const FieldElement c(rng() % 7, fam.field());
    Message::Symbols sum, scaled;
    for (std::size_t j = 0; j < 3; ++j) {
      sum.push_back(x[j] + y[j]);
      scaled.push_back(c * x[j]);
    }
    for (std::uint64_t i = 1; i <= fam.n(); ++i) {
      const auto hx = hash_eval(fam, Message::symbols(x), i);
      const auto hy = hash_eval(fam, Message::symbols(y), i);
      CHECK(hash_eval(fam, Message::symbols(sum), i) == hx + hy);
      CHECK(hash_eval(fam, Message::symbols(scaled), i) == c * hx);
    }
  }
}

TEST_CASE("karp-rabin residues determine the message by CRT") {
  for (std::uint64_t k = 1; k <= 4; ++k) {
    const auto fam = HashFamily::karp_rabin(k, k + 3);
    const std::uint64_t size = fam.message_space_size().to_u64();
    for (std::uint64_t x = 0; x < size; ++x) {
      const auto msg = Message::natural(BigNat(x));
      // Reconstruction oracle: the unique value below the product with these first k residues.
      std::uint64_t matches = 0, found = 0;
      for (std::uint64_t candidate = 0; candidate < size; ++candidate) {
        bool all = true;
        for (std::uint64_t i = 1; i <= k; ++i) all = all && candidate % fam.primes()[i - 1] == hash_eval(fam, msg, i).value();
        if (all) {
          ++matches;
          found = candidate;
        }
      }
      CHECK(matches == 1);
      CHECK(found == x);
    }
  }
}
