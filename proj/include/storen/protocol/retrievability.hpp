#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "storen/codes/codeword.hpp"
#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"
#include "storen/protocol/digest.hpp"

namespace storen {

/// Recover x from a store that answers most challenges correctly: list-decode the
/// answer vector at the Johnson radius of distance n-k+1, then keep the candidates
/// whose hash at the digest's beta equals the stored gamma. Returns every survivor
/// (ideally exactly x), lexicographic order. Tiny families only (Capacity otherwise).
std::vector<Message> retrievability_extract(const HashFamily& fam, const ReceivedWord& answers, const Digest& digest);

/// Same, querying an answer function at every beta in [1, n] to build the answer vector.
std::vector<Message> retrievability_extract(const HashFamily& fam,
                                            const std::function<std::optional<std::uint64_t>(std::uint64_t)>& answer,
                                            const Digest& digest);

/// Johnson radius used by retrievability_extract: johnson_radius(n, n - k + 1).
std::size_t retrieval_radius(const HashFamily& fam);

}  // namespace storen
