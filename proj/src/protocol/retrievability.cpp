#include "storen/protocol/retrievability.hpp"

#include "storen/codes/exhaustive.hpp"
#include "storen/error.hpp"
#include "storen/hash/evaluate.hpp"

namespace storen {

std::size_t retrieval_radius(const HashFamily& fam) { return johnson_radius(fam.n(), fam.n() - fam.k() + 1); }

std::vector<Message> retrievability_extract(const HashFamily& fam, const ReceivedWord& answers, const Digest& digest) {
  require(digest.family_fingerprint == fam.fingerprint(), ErrorKind::Protocol, "digest was made for a different hash family");
  require(digest.variant == ProtocolVariant::Single && digest.gammas.size() == 1, ErrorKind::Usage,
          "retrievability needs a single-prover digest");
  std::vector<Message> survivors;
  for (auto& candidate : brute_force_list_decode(fam, answers, retrieval_radius(fam))) {
    if (hash_eval(fam, candidate, digest.beta).value() == digest.gammas.front()) survivors.push_back(std::move(candidate));
  }
  return survivors;
}

std::vector<Message> retrievability_extract(const HashFamily& fam,
                                            const std::function<std::optional<std::uint64_t>(std::uint64_t)>& answer,
                                            const Digest& digest) {
  ReceivedWord z;
  for (std::uint64_t beta = 1; beta <= fam.n(); ++beta) z.push_back(answer(beta));
  return retrievability_extract(fam, z, digest);
}

}  // namespace storen
