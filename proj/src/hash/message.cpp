#include "storen/hash/message.hpp"

#include "storen/error.hpp"

namespace storen {

Message Message::symbols(std::span<const std::uint64_t> values, PrimeModulus q) {
  Symbols out;
  out.reserve(values.size());
  for (std::uint64_t v : values) {
    require(v < q.value(), ErrorKind::Usage, "message symbol out of field range");
    out.emplace_back(v, q);
  }
  return Message(std::move(out));
}

const Message::Symbols& Message::as_symbols() const {
  const auto* s = std::get_if<Symbols>(&data_);
  require(s != nullptr, ErrorKind::Usage, "message is not a symbol sequence");
  return *s;
}

const BigNat& Message::as_natural() const {
  const auto* n = std::get_if<BigNat>(&data_);
  require(n != nullptr, ErrorKind::Usage, "message is not a natural number");
  return *n;
}

std::vector<std::uint64_t> Message::symbol_values() const {
  std::vector<std::uint64_t> out;
  for (const auto& e : as_symbols()) out.push_back(e.value());
  return out;
}

void check_conforms(const HashFamily& fam, const Message& x) {
  if (fam.kind() == FamilyKind::Polynomial) {
    require(x.is_symbols(), ErrorKind::Usage, "polynomial family expects a symbol message");
    const auto& s = x.as_symbols();
    require(s.size() == fam.k(), ErrorKind::Usage, "message length differs from k");
    for (const auto& e : s) require(e.modulus() == fam.field(), ErrorKind::Usage, "message symbol from another field");
  } else {
    require(!x.is_symbols(), ErrorKind::Usage, "karp-rabin family expects a natural-number message");
    require(x.as_natural() < fam.message_space_size(), ErrorKind::Usage, "message exceeds the CRT message space");
  }
}

Message zero_message(const HashFamily& fam) {
  if (fam.kind() == FamilyKind::KarpRabin) return Message::natural(BigNat{});
  return Message::symbols(Message::Symbols(fam.k(), FieldElement::zero(fam.field())));
}

}  // namespace storen
