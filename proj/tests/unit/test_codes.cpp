#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "storen/codes/codeword.hpp"
#include "storen/codes/exhaustive.hpp"
#include "storen/codes/reed_solomon.hpp"
#include "storen/hash/evaluate.hpp"
#include "test_support.hpp"

using namespace storen;
using storen::test::error_kind_of;

namespace {

std::vector<std::uint64_t> u64s(std::initializer_list<std::uint64_t> xs) { return xs; }

// Oracle: nearest codeword by enumerating all q^m messages.
struct Nearest {
  std::vector<std::uint64_t> message;
  std::size_t distance;
  bool unique;
};

Nearest nearest_codeword(const SystematicRSCode& code, const ReceivedWord& z) {
  const std::uint64_t q = code.field().value();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < code.message_length(); ++i) total *= q;
  Nearest best{{}, z.size() + 1, false};
  std::vector<std::uint64_t> v(code.message_length());
  for (std::uint64_t r = 0; r < total; ++r) {
    std::uint64_t s = r;
    for (auto& sym : v) {
      sym = s % q;
      s /= q;
    }
    const auto c = rs_encode_systematic(code, v);
    const std::size_t d = hamming_distance(z, c.symbols);
    if (d < best.distance) {
      best = {v, d, true};
    } else if (d == best.distance) {
      best.unique = false;
    }
  }
  return best;
}

// Visit every subset of {0..n-1} as a bitmask.
template <class Fn>
void for_each_subset(std::size_t n, Fn&& fn) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) fn(mask);
}

}  // namespace

TEST_CASE("encode examples") {
  const auto poly = HashFamily::polynomial(2, 5, PrimeModulus(5));
  CHECK(encode(poly, Message::symbols(u64s({1, 2}), PrimeModulus(5))).symbols == u64s({1, 3, 0, 2, 4}));
  const auto kr = HashFamily::karp_rabin(2, 4);
  CHECK(encode(kr, Message::natural(BigNat(4))).symbols == u64s({0, 1, 4, 4}));
  CHECK(encode(poly, zero_message(poly)).symbols == u64s({0, 0, 0, 0, 0}));
  CHECK(encode(kr, zero_message(kr)).symbols == u64s({0, 0, 0, 0}));
}

TEST_CASE("message space enumeration agrees with encode") {
  for (const auto& fam : {HashFamily::polynomial(3, 7, PrimeModulus(7)), HashFamily::karp_rabin(3, 5)}) {
    const MessageSpace space(fam);
    std::vector<std::uint64_t> c;
    for (std::uint64_t r = 0; r < space.size(); ++r) {
      space.codeword(r, c);
      REQUIRE(c == encode(fam, space.message(r)).symbols);
    }
  }
  const auto poly = HashFamily::polynomial(2, 5, PrimeModulus(5));
  const MessageSpace space(poly);
  CHECK(space.message(1).symbol_values() == u64s({0, 1}));
  CHECK(space.message(5).symbol_values() == u64s({1, 0}));
}

TEST_CASE("systematic RS encode examples") {
  const SystematicRSCode code(2, 4, PrimeModulus(5));
  CHECK(rs_encode_systematic(code, u64s({0, 0})).symbols == u64s({0, 0, 0, 0}));
  CHECK(rs_encode_systematic(code, u64s({1, 2})).symbols == u64s({1, 2, 3, 4}));
  CHECK(rs_encode_systematic(SystematicRSCode(1, 3, PrimeModulus(5)), u64s({3})).symbols == u64s({3, 3, 3}));
  CHECK(error_kind_of([] { SystematicRSCode(2, 6, PrimeModulus(5)); }) == ErrorKind::Parameter);
  CHECK(error_kind_of([] { SystematicRSCode(3, 2, PrimeModulus(5)); }) == ErrorKind::Parameter);
  CHECK(error_kind_of([&] { (void)rs_encode_systematic(code, u64s({1})); }) == ErrorKind::Usage);
}

TEST_CASE("systematic RS is systematic at random sizes") {
  std::mt19937_64 rng(17);
  const PrimeModulus q(2147483647);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 6;
    const SystematicRSCode code(m, m + rng() % 6, q);
    std::vector<std::uint64_t> v(m);
    for (auto& s : v) s = rng() % q.value();
    const auto c = rs_encode_systematic(code, v);
    CHECK(std::equal(v.begin(), v.end(), c.symbols.begin()));
  }
}

TEST_CASE("RS decode examples") {
  const SystematicRSCode code(2, 4, PrimeModulus(5));
  const ReceivedWord clean{1, 2, 3, 4};
  auto d = rs_decode_errors_erasures(code, clean);
  REQUIRE(d);
  CHECK(d->message == u64s({1, 2}));
  CHECK(d->error_positions.empty());

  const ReceivedWord corrupted{1, 2, 3, 0};
  d = rs_decode_errors_erasures(code, corrupted);
  REQUIRE(d);
  CHECK(d->message == u64s({1, 2}));
  CHECK(d->error_positions == std::set<std::size_t>{4});
  const auto oracle = nearest_codeword(code, corrupted);
  CHECK(oracle.unique);
  CHECK(oracle.distance == 1);
  CHECK(oracle.message == u64s({1, 2}));

  const ReceivedWord erased{1, 2, std::nullopt, std::nullopt};
  d = rs_decode_errors_erasures(code, erased);
  REQUIRE(d);
  CHECK(d->message == u64s({1, 2}));
  CHECK(d->error_positions.empty());

  const ReceivedWord too_many{1, std::nullopt, std::nullopt, std::nullopt};
  CHECK_FALSE(rs_decode_errors_erasures(code, too_many));
  const ReceivedWord two_errors{0, 0, 3, 4};
  CHECK_FALSE(rs_decode_errors_erasures(code, two_errors));

  CHECK(error_kind_of([&] { (void)rs_decode_errors_erasures(code, ReceivedWord{1, 2, 3}); }) == ErrorKind::Usage);
  CHECK(error_kind_of([&] { (void)rs_decode_errors_erasures(code, ReceivedWord{1, 2, 3, 9}); }) == ErrorKind::Usage);
}

TEST_CASE("RS error-and-erasure round trip, exhaustive for q <= 7, ell <= 6") {
  for (std::uint64_t q : {5, 7}) {
    for (std::size_t ell = 1; ell <= 6 && ell <= q; ++ell) {
      for (std::size_t m = 1; m <= ell; ++m) {
        const SystematicRSCode code(m, ell, PrimeModulus(q));
        const std::size_t budget = ell - m;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < m; ++i) total *= q;
        for (std::uint64_t r = 0; r < total; ++r) {
          std::vector<std::uint64_t> v(m);
          std::uint64_t s = r;
          for (auto& sym : v) {
            sym = s % q;
            s /= q;
          }
          const auto c = rs_encode_systematic(code, v);
          for_each_subset(ell, [&](std::uint32_t errors) {
            const std::size_t ne = static_cast<std::size_t>(std::popcount(errors));
            if (2 * ne > budget) return;
            for_each_subset(ell, [&](std::uint32_t erasures) {
              if (erasures & errors) return;
              const std::size_t ns = static_cast<std::size_t>(std::popcount(erasures));
              if (2 * ne + ns > budget) return;
              std::vector<std::size_t> positions;
              for (std::size_t j = 0; j < ell; ++j) {
                if (errors >> j & 1) positions.push_back(j);
              }
              std::set<std::size_t> expected;
              for (std::size_t j : positions) expected.insert(j + 1);
              // Every assignment of nonzero offsets to the error positions.
              std::vector<std::uint64_t> offsets(positions.size(), 1);
              while (true) {
                ReceivedWord z = as_received(c);
                for (std::size_t j = 0; j < ell; ++j) {
                  if (erasures >> j & 1) z[j].reset();
                }
                for (std::size_t t = 0; t < positions.size(); ++t) z[positions[t]] = (c.symbols[positions[t]] + offsets[t]) % q;
                const auto d = rs_decode_errors_erasures(code, z);
                REQUIRE(d);
                REQUIRE(d->message == v);
                REQUIRE(d->error_positions == expected);
                std::size_t t = 0;
                while (t < offsets.size() && ++offsets[t] == q) offsets[t++] = 1;
                if (t == offsets.size()) break;
              }
            });
          });
        }
      }
    }
  }
}

TEST_CASE("RS decode beyond budget never returns an inconsistent answer") {
  const SystematicRSCode code(2, 5, PrimeModulus(7));
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3000; ++trial) {
    ReceivedWord z(5);
    for (auto& s : z) {
      if (rng() % 4 == 0) continue;
      s = rng() % 7;
    }
    const auto d = rs_decode_errors_erasures(code, z);
    const auto oracle = nearest_codeword(code, z);
    std::size_t erasures = 0;
    for (const auto& s : z) erasures += !s;
    if (d) {
      const auto c = rs_encode_systematic(code, d->message);
      CHECK(hamming_distance(z, c.symbols) == d->error_positions.size() + erasures);
      CHECK(2 * d->error_positions.size() + erasures <= code.redundancy());
      CHECK(oracle.message == d->message);
    } else {
      // Nearest codeword must be outside the unique-decoding budget.
      CHECK(2 * (oracle.distance - erasures) + erasures > code.redundancy());
    }
  }
}

TEST_CASE("RS decode on random patterns over a 31-bit field") {
  std::mt19937_64 rng(29);
  const PrimeModulus q(2147483647);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t ell = m + rng() % 9;
    const SystematicRSCode code(m, ell, q);
    std::vector<std::uint64_t> v(m);
    for (auto& s : v) s = rng() % q.value();
    const auto c = rs_encode_systematic(code, v);
    std::vector<std::size_t> order(ell);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t budget = ell - m;
    const std::size_t ne = rng() % (budget / 2 + 1);
    const std::size_t ns = rng() % (budget - 2 * ne + 1);
    ReceivedWord z = as_received(c);
    std::set<std::size_t> expected;
    for (std::size_t t = 0; t < ne; ++t) {
      z[order[t]] = (c.symbols[order[t]] + 1 + rng() % (q.value() - 1)) % q.value();
      expected.insert(order[t] + 1);
    }
    for (std::size_t t = ne; t < ne + ns; ++t) z[order[t]].reset();
    const auto d = rs_decode_errors_erasures(code, z);
    REQUIRE(d);
    CHECK(d->message == v);
    CHECK(d->error_positions == expected);
  }
}

TEST_CASE("minimum distance examples") {
  CHECK(min_distance_exhaustive(HashFamily::polynomial(2, 5, PrimeModulus(5))) == 4);
  CHECK(min_distance_exhaustive(HashFamily::karp_rabin(2, 4)) == 3);
  CHECK(min_distance_exhaustive(HashFamily::polynomial(2, 2, PrimeModulus(5))) == 1);
  CHECK(min_distance_exhaustive(HashFamily::polynomial(3, 7, PrimeModulus(7))) == 5);
  CHECK(min_distance_exhaustive(SystematicRSCode(2, 4, PrimeModulus(5))) == 3);
  CHECK(error_kind_of([] { (void)min_distance_exhaustive(HashFamily::polynomial(8, 11, PrimeModulus(11))); }) ==
        ErrorKind::Capacity);
}

TEST_CASE("minimum distance is n - k + 1 at every enumerable size") {
  for (std::uint64_t q : {3, 5, 7}) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      for (std::uint64_t n = k; n <= q; ++n) {
        CHECK(min_distance_exhaustive(HashFamily::polynomial(k, n, PrimeModulus(q))) == n - k + 1);
      }
    }
  }
  for (std::uint64_t k = 1; k <= 4; ++k) {
    for (std::uint64_t n = k; n <= 8; ++n) CHECK(min_distance_exhaustive(HashFamily::karp_rabin(k, n)) == n - k + 1);
  }
}

TEST_CASE("johnson radius") {
  CHECK(johnson_radius(5, 4) == 2);
  CHECK(johnson_radius(5, 0) == 0);
  CHECK(johnson_radius(4, 4) == 4);
  for (std::size_t n = 1; n <= 200; ++n) {
    for (std::size_t d = 0; d <= n; ++d) {
      const double real = (1.0 - std::sqrt(1.0 - static_cast<double>(d) / static_cast<double>(n))) * static_cast<double>(n);
      const auto r = johnson_radius(n, d);
      CHECK(static_cast<double>(r) <= real + 1e-9);
      CHECK(static_cast<double>(r + 1) > real - 1e-9);
    }
  }
  CHECK(error_kind_of([] { (void)johnson_radius(3, 4); }) == ErrorKind::Usage);
}

TEST_CASE("brute force list decoding") {
  const auto fam = HashFamily::polynomial(2, 5, PrimeModulus(5));
  const auto x = Message::symbols(u64s({1, 2}), PrimeModulus(5));
  const auto z = as_received(encode(fam, x));
  const auto at_zero = brute_force_list_decode(fam, z, 0);
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero.front() == x);
  CHECK(brute_force_list_decode(fam, z, 5).size() == 25);
  CHECK(johnson_list_bound(fam) == 50);

  const auto everything = brute_force_list_decode(fam, z, 5);
  for (std::size_t i = 1; i < everything.size(); ++i) {
    CHECK(everything[i - 1].symbol_values() < everything[i].symbol_values());
  }

  const std::size_t radius = johnson_radius(5, 4);
  std::size_t worst = 0;
  for (std::uint64_t r = 0; r < 3125; r += 7) {
    std::uint64_t s = r;
    ReceivedWord zz(5);
    for (auto& sym : zz) {
      sym = s % 5;
      s /= 5;
    }
    const auto list = brute_force_list_decode(fam, zz, radius);
    CHECK(list.size() == list_size(fam, zz, radius));
    worst = std::max(worst, list.size());
  }
  CHECK(worst <= 50);

  const auto kr = HashFamily::karp_rabin(2, 4);
  const auto krz = as_received(encode(kr, Message::natural(BigNat(5))));
  const auto krl = brute_force_list_decode(kr, krz, 0);
  REQUIRE(krl.size() == 1);
  CHECK(krl.front().as_natural().to_u64() == 5);
}
