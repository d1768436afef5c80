#include "storen/codes/exhaustive.hpp"

#include <algorithm>

#include "storen/algebra/field_element.hpp"
#include "storen/error.hpp"

namespace storen {

MessageSpace::MessageSpace(const HashFamily& fam, std::uint64_t limit) : fam_(&fam) {
  const BigNat& size = fam.message_space_size();
  require(size <= BigNat(limit), ErrorKind::Capacity, "message space too large to enumerate");
  size_ = size.to_u64();
}

Message MessageSpace::message(std::uint64_t rank) const {
  require(rank < size_, ErrorKind::Usage, "message rank out of range");
  if (fam_->kind() == FamilyKind::KarpRabin) return Message::natural(BigNat(rank));
  const std::uint64_t q = fam_->field().value();
  std::vector<std::uint64_t> digits(fam_->k());
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = rank % q;
    rank /= q;
  }
  return Message::symbols(digits, fam_->field());
}

void MessageSpace::codeword(std::uint64_t rank, std::vector<std::uint64_t>& out) const {
  out.resize(fam_->n());
  if (fam_->kind() == FamilyKind::KarpRabin) {
    const auto primes = fam_->primes();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rank % primes[i];
    return;
  }
  const std::uint64_t q = fam_->field().value();
  // Base-q digits of rank with x_0 most significant.
  thread_local std::vector<std::uint64_t> coeffs;
  coeffs.resize(fam_->k());
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    coeffs[j] = rank % q;
    rank /= q;
  }
  for (std::uint64_t point = 0; point < out.size(); ++point) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = add_mod(mul_mod(acc, point, q), coeffs[j], q);
    out[point] = acc;
  }
}

Rational collision_probability_exact(const HashFamily& fam) {
  const MessageSpace space(fam);
  const std::uint64_t n = fam.n();
  std::size_t worst = 0;
  if (fam.kind() == FamilyKind::Polynomial) {
    std::vector<std::uint64_t> c;
    for (std::uint64_t d = 1; d < space.size(); ++d) {
      space.codeword(d, c);
      worst = std::max<std::size_t>(worst, static_cast<std::size_t>(std::count(c.begin(), c.end(), 0)));
    }
  } else {
    const auto primes = fam.primes();
    for (std::uint64_t d = 1; d < space.size(); ++d) {
      const auto agree = std::count_if(primes.begin(), primes.end(), [d](std::uint64_t p) { return d % p == 0; });
      worst = std::max<std::size_t>(worst, static_cast<std::size_t>(agree));
    }
  }
  return Rational::make(worst, n);
}

namespace {

std::size_t min_pairwise(const std::vector<std::vector<std::uint64_t>>& words) {
  require(words.size() >= 2, ErrorKind::Usage, "distance needs at least two codewords");
  std::size_t best = words.front().size();
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) best = std::min(best, hamming_distance(words[a], words[b]));
  }
  return best;
}

}  // namespace

std::size_t min_distance_exhaustive(const HashFamily& fam) {
  const MessageSpace space(fam, kMaxDistanceMessages);
  std::vector<std::vector<std::uint64_t>> words(space.size());
  for (std::uint64_t r = 0; r < space.size(); ++r) space.codeword(r, words[r]);
  return min_pairwise(words);
}

std::size_t min_distance_exhaustive(const SystematicRSCode& code) {
  const std::uint64_t q = code.field().value();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < code.message_length(); ++i) {
    require(count <= kMaxDistanceMessages / q, ErrorKind::Capacity, "RS message space too large to enumerate");
    count *= q;
  }
  std::vector<std::vector<std::uint64_t>> words;
  words.reserve(count);
  std::vector<std::uint64_t> v(code.message_length());
  for (std::uint64_t r = 0; r < count; ++r) {
    std::uint64_t s = r;
    for (auto& sym : v) {
      sym = s % q;
      s /= q;
    }
    words.push_back(rs_encode_systematic(code, v).symbols);
  }
  return min_pairwise(words);
}

std::size_t johnson_radius(std::size_t n, std::size_t d) {
  require(d <= n, ErrorKind::Usage, "johnson_radius: distance exceeds block length");
  // Largest e <= n with (n - e)^2 >= n (n - d).
  const unsigned __int128 target = static_cast<unsigned __int128>(n) * (n - d);
  std::size_t e = 0;
  while (e < n) {
    const unsigned __int128 rest = n - (e + 1);
    if (rest * rest < target) break;
    ++e;
  }
  return e;
}

std::uint64_t johnson_list_bound(const HashFamily& fam) { return 2 * fam.alphabet_sum(); }

std::vector<Message> brute_force_list_decode(const HashFamily& fam, const ReceivedWord& z, std::size_t radius) {
  require(z.size() == fam.n(), ErrorKind::Usage, "received word length differs from n");
  const MessageSpace space(fam);
  std::vector<Message> out;
  std::vector<std::uint64_t> c;
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    space.codeword(r, c);
    if (hamming_distance(z, c) <= radius) out.push_back(space.message(r));
  }
  return out;
}

std::size_t list_size(const HashFamily& fam, const ReceivedWord& z, std::size_t radius) {
  require(z.size() == fam.n(), ErrorKind::Usage, "received word length differs from n");
  const MessageSpace space(fam);
  std::size_t count = 0;
  std::vector<std::uint64_t> c;
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    space.codeword(r, c);
    count += hamming_distance(z, c) <= radius;
  }
  return count;
}

}  // namespace storen
