#pragma once

#include <cstdint>
#include <string>

#include "storen/protocol/digest.hpp"

namespace storen {

/// Parameters of a storage-enforcement bound. list_size is L of a (rho, L)
/// list-decodable code; provers is s (1 for the single-prover variant).
struct SlackParams {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t list_size = 0;
  std::uint64_t provers = 1;
};

/// Everything subtracted from C(x) in the enforced-storage function f(x), split into
/// the numeric part (bits) and the unspecified constant c0, which is never assigned a value.
///
///  Single    log(q L n^3) + 2 log log(qn)                 + c0
///  Trivial   s + log(s^2 q L^s n^4) + 2 log log(qn)       + c0
///  Linear    s + log(s^2 q L n^4) + 2 log log(qn)         + c0
///  RsParity  same as Linear
struct SlackReport {
  ProtocolVariant variant = ProtocolVariant::Single;
  double numeric_bits = 0.0;
  std::string formula;

  /// e.g. "19.36 + c0"
  std::string to_string() const;
};

SlackReport storage_bound_slack(ProtocolVariant variant, const SlackParams& params);

}  // namespace storen
