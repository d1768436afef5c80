#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"

namespace storen {

/// H(x) = (h_1(x), ..., h_n(x)); coordinate i lives in the alphabet of h_i.
struct Codeword {
  std::vector<std::uint64_t> symbols;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// A codeword as seen by a decoder; nullopt marks an erasure.
using ReceivedWord = std::vector<std::optional<std::uint64_t>>;

ReceivedWord as_received(const Codeword& c);

Codeword encode(const HashFamily& fam, const Message& x);

/// Number of positions where the words differ; an erased position never agrees.
std::size_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t hamming_distance(const ReceivedWord& z, std::span<const std::uint64_t> c);

}  // namespace storen
