#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "storen/algebra/bignat.hpp"
#include "storen/algebra/field_element.hpp"
#include "storen/hash/family.hpp"

namespace storen {

/// A message hashed by a family: k field symbols (Polynomial) or a natural number (KarpRabin).
class Message {
 public:
  using Symbols = std::vector<FieldElement>;

  static Message symbols(std::span<const std::uint64_t> values, PrimeModulus q);
  static Message symbols(Symbols values) { return Message(std::move(values)); }
  static Message natural(BigNat value) { return Message(std::move(value)); }

  bool is_symbols() const noexcept { return std::holds_alternative<Symbols>(data_); }
  const Symbols& as_symbols() const;
  const BigNat& as_natural() const;

  /// Symbol values (Polynomial) as plain integers.
  std::vector<std::uint64_t> symbol_values() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  explicit Message(Symbols s) : data_(std::move(s)) {}
  explicit Message(BigNat n) : data_(std::move(n)) {}

  std::variant<Symbols, BigNat> data_;
};

/// Throws Usage unless x has the shape and range the family expects.
void check_conforms(const HashFamily& fam, const Message& x);

/// The zero message of the family.
Message zero_message(const HashFamily& fam);

}  // namespace storen
