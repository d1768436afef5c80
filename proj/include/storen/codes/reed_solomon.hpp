#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "storen/algebra/prime_modulus.hpp"
#include "storen/codes/codeword.hpp"

namespace storen {

/// Systematic Reed-Solomon code RS: GF(q)^m -> GF(q)^ell over the evaluation points
/// 0, 1, ..., ell-1. The codeword of v is the evaluation of the unique polynomial of
/// degree < m with P(j) = v_j for j < m, so its first m symbols are v itself.
class SystematicRSCode {
 public:
  /// Throws Parameter unless 1 <= m <= ell <= q.
  SystematicRSCode(std::size_t message_length, std::size_t block_length, PrimeModulus q);

  std::size_t message_length() const noexcept { return m_; }
  std::size_t block_length() const noexcept { return ell_; }
  std::size_t redundancy() const noexcept { return ell_ - m_; }
  PrimeModulus field() const noexcept { return q_; }

 private:
  std::size_t m_;
  std::size_t ell_;
  PrimeModulus q_;
};

Codeword rs_encode_systematic(const SystematicRSCode& code, std::span<const std::uint64_t> v);

struct RsDecoding {
  std::vector<std::uint64_t> message;
  /// 1-based positions where the received word disagreed with the decoded codeword.
  std::set<std::size_t> error_positions;
};

/// Error-and-erasure decoding by Berlekamp-Welch on the non-erased coordinates.
///
/// Returns the unique codeword agreeing with z outside an error set E with
/// 2|E| + erasures <= ell - m, or nullopt (decode failure) when no such codeword exists.
/// Throws Usage if |z| != ell or a symbol is out of range.
std::optional<RsDecoding> rs_decode_errors_erasures(const SystematicRSCode& code, const ReceivedWord& z);

}  // namespace storen
