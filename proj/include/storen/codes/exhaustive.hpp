#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "storen/codes/codeword.hpp"
#include "storen/codes/reed_solomon.hpp"
#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"

namespace storen {

inline constexpr std::uint64_t kMaxEnumeratedMessages = 1'000'000;
inline constexpr std::uint64_t kMaxDistanceMessages = 100'000;

/// Every message of a family, in lexicographic order (x_0 most significant for
/// Polynomial, numeric order for KarpRabin). Throws Capacity above `limit`.
class MessageSpace {
 public:
  MessageSpace(const HashFamily& fam, std::uint64_t limit = kMaxEnumeratedMessages);

  std::uint64_t size() const noexcept { return size_; }
  Message message(std::uint64_t rank) const;
  /// encode(fam, message(rank)) computed directly on machine words.
  void codeword(std::uint64_t rank, std::vector<std::uint64_t>& out) const;

 private:
  const HashFamily* fam_;
  std::uint64_t size_;
};

/// max over x != y of |{i : h_i(x) = h_i(y)}| / n.
/// Polynomial uses linearity (agreements of x, y = zeros of H(x - y)); KarpRabin uses
/// that x = y mod p_i iff p_i divides |x - y|. Both are exact over the full space.
Rational collision_probability_exact(const HashFamily& fam);

/// min over x != y of the Hamming distance of their codewords, by pairwise comparison.
std::size_t min_distance_exhaustive(const HashFamily& fam);
std::size_t min_distance_exhaustive(const SystematicRSCode& code);

/// floor((1 - sqrt(1 - d/n)) n), computed in exact integer arithmetic.
std::size_t johnson_radius(std::size_t n, std::size_t d);

/// Johnson list-size bound 2 * sum_i |alphabet_i| (2qn for a single alphabet).
std::uint64_t johnson_list_bound(const HashFamily& fam);

/// All messages whose codeword is within Hamming distance `radius` of z, lexicographic order.
std::vector<Message> brute_force_list_decode(const HashFamily& fam, const ReceivedWord& z, std::size_t radius);

/// Size of the list only, without materialising messages.
std::size_t list_size(const HashFamily& fam, const ReceivedWord& z, std::size_t radius);

}  // namespace storen
