#include "storen/codes/codeword.hpp"

#include "storen/error.hpp"
#include "storen/hash/evaluate.hpp"

namespace storen {

ReceivedWord as_received(const Codeword& c) { return {c.symbols.begin(), c.symbols.end()}; }

Codeword encode(const HashFamily& fam, const Message& x) {
  check_conforms(fam, x);
  Codeword out;
  out.symbols.reserve(fam.n());
  for (std::uint64_t i = 1; i <= fam.n(); ++i) out.symbols.push_back(hash_eval(fam, x, i).value());
  return out;
}

std::size_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  require(a.size() == b.size(), ErrorKind::Usage, "hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::size_t hamming_distance(const ReceivedWord& z, std::span<const std::uint64_t> c) {
  require(z.size() == c.size(), ErrorKind::Usage, "hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < z.size(); ++i) d += !z[i] || *z[i] != c[i];
  return d;
}

}  // namespace storen
