#pragma once

#include <cstdint>

#include "storen/algebra/field_element.hpp"
#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"

namespace storen {

/// h_index(x), index in [1, n]. Polynomial: P_x at field point index-1. KarpRabin: x mod p_index.
FieldElement hash_eval(const HashFamily& fam, const Message& x, std::uint64_t index);

/// One-pass evaluation of h_index over a stream of symbols (Polynomial, x_0 first) or
/// base-2^32 digits (KarpRabin, most significant first).
///
/// Working state is a fixed handful of words; push() never allocates. Each Polynomial
/// symbol costs one field addition and one multiplication: the stream is folded by
/// Horner's rule in the reciprocal point and rescaled once by point^(k-1) at finish().
class StreamingHash {
 public:
  StreamingHash(const HashFamily& fam, std::uint64_t index);

  /// Throws MalformedInput for an out-of-range symbol/digit or too many of them.
  void push(std::uint64_t symbol);
  /// Throws MalformedInput if the stream length or value does not fit the family.
  FieldElement finish() const;

  std::uint64_t consumed() const noexcept { return count_; }

 private:
  const HashFamily* fam_;
  std::uint64_t modulus_;
  std::uint64_t point_;
  std::uint64_t step_;  // 1/point (Polynomial, point != 0) or 2^32 mod p (KarpRabin)
  std::uint64_t acc_ = 0;
  std::uint64_t count_ = 0;
  int order_ = 0;  // KarpRabin: comparison of the streamed prefix with the message bound
};

template <class Range>
FieldElement hash_eval_stream(const HashFamily& fam, const Range& stream, std::uint64_t index) {
  StreamingHash h(fam, index);
  for (auto symbol : stream) h.push(static_cast<std::uint64_t>(symbol));
  return h.finish();
}

}  // namespace storen
