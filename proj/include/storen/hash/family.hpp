#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "storen/algebra/bignat.hpp"
#include "storen/algebra/prime_modulus.hpp"

namespace storen {

enum class FamilyKind : std::uint8_t { Polynomial = 0, KarpRabin = 1 };

const char* to_string(FamilyKind kind) noexcept;

/// Exact non-negative fraction, always reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;
};

using Fingerprint = std::array<std::uint8_t, 32>;

/// Fully determines a hash family {h_1..h_n}; the unit of agreement between verifier and prover.
///
/// Polynomial: h_i(x) = sum_j x_j (i-1)^j over GF(q), messages are k field symbols.
/// KarpRabin:  h_i(x) = x mod p_i over the first n primes, messages are naturals below
///             the product of the first k primes.
///
/// Hash indices are 1-based throughout, matching challenge indices beta in [n].
class HashFamily {
 public:
  static HashFamily polynomial(std::uint64_t k, std::uint64_t n, PrimeModulus q);
  static HashFamily karp_rabin(std::uint64_t k, std::uint64_t n);

  FamilyKind kind() const noexcept { return kind_; }
  std::uint64_t k() const noexcept { return k_; }
  std::uint64_t n() const noexcept { return n_; }

  /// GF(q) of the Polynomial kind; throws Unsupported for KarpRabin.
  PrimeModulus field() const;
  bool is_linear() const noexcept { return kind_ == FamilyKind::Polynomial; }

  /// Alphabet of coordinate i (1-based): q, or p_i.
  PrimeModulus coordinate_modulus(std::uint64_t index) const;
  /// Largest coordinate alphabet; the q of the resource-bound formulas.
  PrimeModulus max_modulus() const noexcept;
  /// Sum of all coordinate alphabet sizes (2x this is the Johnson list size).
  std::uint64_t alphabet_sum() const noexcept;

  /// KarpRabin only: p_1..p_n and p_1..p_k.
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::span<const std::uint64_t> message_primes() const noexcept {
    return std::span<const std::uint64_t>(primes_).first(kind_ == FamilyKind::KarpRabin ? k_ : 0);
  }
  /// Size of the message space: q^k or prod_{i<=k} p_i.
  const BigNat& message_space_size() const noexcept { return space_size_; }
  /// Number of base-2^32 digits of the largest KarpRabin message.
  std::size_t max_message_digits() const noexcept { return max_digits_; }
  /// Digits of the KarpRabin message-space size minus one, most significant first.
  std::span<const std::uint32_t> message_bound_digits() const noexcept { return bound_digits_; }

  /// Achieved collision bound (k-1)/n.
  Rational collision_bound() const noexcept { return Rational::make(k_ - 1, n_); }
  /// Design target the family was derived from, if any.
  std::optional<double> epsilon_target() const noexcept { return epsilon_; }
  void set_epsilon_target(double epsilon) noexcept { epsilon_ = epsilon; }

  /// kind byte | k u64 LE | n u64 LE | (q | prime count) u64 LE
  std::vector<std::uint8_t> canonical_encoding() const;
  static HashFamily decode(std::span<const std::uint8_t> bytes);
  /// SHA-256 of canonical_encoding().
  const Fingerprint& fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const HashFamily& a, const HashFamily& b) noexcept {
    return a.kind_ == b.kind_ && a.k_ == b.k_ && a.n_ == b.n_ && a.q_ == b.q_;
  }

 private:
  HashFamily() = default;
  void finalize();

  FamilyKind kind_ = FamilyKind::Polynomial;
  std::uint64_t k_ = 0;
  std::uint64_t n_ = 0;
  std::uint64_t q_ = 0;  // Polynomial field size; 0 for KarpRabin
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint32_t> bound_digits_;
  BigNat space_size_;
  Fingerprint fingerprint_{};
  std::size_t max_digits_ = 0;
  std::optional<double> epsilon_;
};

/// n = ceil(k / epsilon^2); Polynomial picks q = smallest prime >= n,
/// KarpRabin takes the first n primes. Throws Usage unless 0 < epsilon < 1.
HashFamily derive_family(FamilyKind kind, std::uint64_t k, double epsilon);

/// ceil(k / epsilon^2), tolerant of floating-point noise in the quotient.
std::uint64_t family_size_for(std::uint64_t k, double epsilon);

}  // namespace storen
