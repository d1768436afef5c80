#include "storen/adversary/strategy.hpp"

#include <charconv>
#include <sstream>

#include "storen/codes/codeword.hpp"
#include "storen/error.hpp"
#include "storen/hash/evaluate.hpp"

namespace storen {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t parse_count(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc{} && ptr == text.data() + text.size(), ErrorKind::Usage, "strategy parameter is not a count");
  return v;
}

void append_bits(std::vector<std::uint8_t>& out, std::size_t& bits, std::uint64_t value, unsigned width) {
  for (unsigned b = 0; b < width; ++b, ++bits) {
    if (bits % 8 == 0) out.push_back(0);
    if (value >> b & 1) out.back() |= static_cast<std::uint8_t>(1u << (bits % 8));
  }
}

}  // namespace

ProverStrategy parse_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;
  if (name == "honest" && !has_arg) return {Honest{}};
  if ((name == "partial" || name == "partial-codeword") && has_arg) return {PartialCodeword{parse_count(arg)}};
  if (name == "partial-raw" && has_arg) return {PartialRaw{parse_count(arg)}};
  if (name == "uniform" && !has_arg) return {UniformGuesser{}};
  if (name == "zero" && !has_arg) return {ZeroAnswerer{}};
  if (name == "silent" && !has_arg) return {Unresponsive{1.0, SilenceMode::ExplicitNoResponse}};
  if (name == "silent-timeout" && !has_arg) return {Unresponsive{1.0, SilenceMode::Timeout}};
  if (name == "unresponsive" && has_arg) {
    double p = 0;
    std::istringstream is(arg);
    require(static_cast<bool>(is >> p) && is.eof() && p >= 0.0 && p <= 1.0, ErrorKind::Usage,
            "unresponsive probability must lie in [0, 1]");
    return {Unresponsive{p, SilenceMode::ExplicitNoResponse}};
  }
  fail(ErrorKind::Usage, "unknown prover strategy '" + text + "'");
}

std::string describe(const ProverStrategy& s) {
  return std::visit(Overloaded{
                        [](const Honest&) -> std::string { return "honest"; },
                        [](const PartialCodeword& p) { return "partial-codeword:" + std::to_string(p.t); },
                        [](const PartialRaw& p) { return "partial-raw:" + std::to_string(p.t); },
                        [](const UniformGuesser&) -> std::string { return "uniform"; },
                        [](const ZeroAnswerer&) -> std::string { return "zero"; },
                        [](const Unresponsive& u) -> std::string {
                          if (u.probability >= 1.0) return u.mode == SilenceMode::Timeout ? "silent-timeout" : "silent";
                          std::ostringstream os;
                          os << "unresponsive:" << u.probability;
                          return os.str();
                        },
                        [](const Colluding& c) {
                          std::string out = "colluding{";
                          for (auto m : c.members) out += std::to_string(m) + (m == *c.members.rbegin() ? "" : ",");
                          return out + "}:" + (c.inner ? describe(*c.inner) : "honest");
                        },
                    },
                    s.kind);
}

std::vector<ProverStrategy> assign_strategies(const ProverStrategy& s, std::size_t provers) {
  const auto* coalition = std::get_if<Colluding>(&s.kind);
  if (coalition == nullptr) return std::vector<ProverStrategy>(provers, s);
  std::vector<ProverStrategy> out(provers, ProverStrategy{Honest{}});
  for (std::size_t m : coalition->members) {
    require(m >= 1 && m <= provers, ErrorKind::Usage, "colluding member outside [1, s]");
    require(coalition->inner != nullptr, ErrorKind::Usage, "colluding strategy needs an inner strategy");
    require(!std::holds_alternative<Colluding>(coalition->inner->kind), ErrorKind::Usage, "nested colluding strategies");
    out[m - 1] = *coalition->inner;
  }
  return out;
}

void ProverStore::serialize(unsigned width) {
  y_.clear();
  std::size_t bits = 0;
  append_bits(y_, bits, static_cast<std::uint32_t>(tag_), 32);
  if (tag_ == Tag::Honest && fam_->kind() == FamilyKind::KarpRabin) {
    append_bits(y_, bits, 1, 32);
    // Every message is below the space size, so bit_length(size - 1) bits suffice.
    auto top = fam_->message_space_size().limbs();
    for (auto& l : top) {
      if (l-- != 0) break;
    }
    const std::size_t field_bits = BigNat::from_limbs(std::move(top)).bit_length();
    const auto& limbs = kept_natural_.limbs();
    for (std::size_t b = 0; b < field_bits; ++b) {
      const bool bit = b / 32 < limbs.size() && (limbs[b / 32] >> (b % 32) & 1);
      append_bits(y_, bits, bit ? 1 : 0, 1);
    }
  } else {
    append_bits(y_, bits, kept_.size(), 32);
    for (std::uint64_t v : kept_) append_bits(y_, bits, v, width);
  }
  retained_bits_ = bits;
}

ProverStore ProverStore::build(const ProverStrategy& strategy, const ProverInput& input) {
  require(input.fam != nullptr && input.held != nullptr, ErrorKind::Usage, "prover input is incomplete");
  const HashFamily& fam = *input.fam;
  const Message& held = *input.held;
  check_conforms(fam, held);

  ProverStore store;
  store.fam_ = &fam;
  store.offset_ = input.offset;
  store.description_ = describe(strategy);
  const bool symbols = fam.kind() == FamilyKind::Polynomial;
  const std::uint64_t length = input.length == 0 ? fam.k() - input.offset : input.length;
  require(input.offset + length <= fam.k(), ErrorKind::Usage, "prover chunk outside the message");

  const auto keep_chunk = [&](std::uint64_t count) {
    const auto values = held.symbol_values();
    store.kept_.assign(values.begin() + static_cast<std::ptrdiff_t>(input.offset),
                       values.begin() + static_cast<std::ptrdiff_t>(input.offset + count));
  };
  const auto keep_honest = [&] {
    store.tag_ = Tag::Honest;
    if (symbols) {
      keep_chunk(length);
    } else {
      store.kept_natural_ = held.as_natural();
    }
  };

  std::visit(Overloaded{
                 [&](const Honest&) { keep_honest(); },
                 [&](const PartialCodeword& p) {
                   require(p.t <= fam.n(), ErrorKind::Usage, "partial-codeword t exceeds n");
                   store.tag_ = Tag::PartialCodeword;
                   const auto c = encode(fam, held);
                   store.kept_.assign(c.symbols.begin(), c.symbols.begin() + static_cast<std::ptrdiff_t>(p.t));
                 },
                 [&](const PartialRaw& p) {
                   require(symbols, ErrorKind::Unsupported, "partial-raw applies to symbol messages only");
                   require(p.t <= length, ErrorKind::Usage, "partial-raw t exceeds the message length");
                   store.tag_ = Tag::PartialRaw;
                   keep_chunk(p.t);
                 },
                 [&](const UniformGuesser&) { store.tag_ = Tag::Uniform; },
                 [&](const ZeroAnswerer&) { store.tag_ = Tag::Zero; },
                 [&](const Unresponsive& u) {
                   keep_honest();
                   store.silence_probability_ = u.probability;
                   store.silence_ = u.mode;
                 },
                 [&](const Colluding&) { fail(ErrorKind::Usage, "expand colluding strategies with assign_strategies"); },
             },
             strategy.kind);
  store.serialize(fam.max_modulus().residue_bits());
  return store;
}

std::optional<std::uint64_t> ProverStore::answer(std::uint64_t beta, Rng& rng) const {
  const HashFamily& fam = *fam_;
  const std::uint64_t modulus = fam.coordinate_modulus(beta).value();
  if (silence_probability_ > 0.0 && (silence_probability_ >= 1.0 || rng.chance(silence_probability_))) {
    return std::nullopt;
  }
  switch (tag_) {
    case Tag::Honest:
    case Tag::PartialRaw: {
      if (fam.kind() == FamilyKind::KarpRabin) return mod_small(kept_natural_, modulus);
      // sum_j kept_j * point^(offset + j)
      const std::uint64_t point = beta - 1;
      std::uint64_t acc = 0;
      for (std::size_t j = kept_.size(); j-- > 0;) acc = add_mod(mul_mod(acc, point, modulus), kept_[j], modulus);
      return mul_mod(acc, pow_mod(point, offset_, modulus), modulus);
    }
    case Tag::PartialCodeword:
      if (beta <= kept_.size()) return kept_[beta - 1];
      return rng.below(modulus);
    case Tag::Uniform: return rng.below(modulus);
    case Tag::Zero: return 0;
  }
  return std::nullopt;
}

}  // namespace storen
