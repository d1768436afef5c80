#pragma once

#include <cstdint>
#include <vector>

namespace storen {

class PrimeModulus;

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime >= n (n >= 0). Throws Usage if the result would not fit below 2^62.
std::uint64_t next_prime(std::uint64_t n);

/// The first n primes in increasing order, starting at 2.
std::vector<PrimeModulus> first_n_primes(std::size_t n);

/// Raw values of first_n_primes, for enumeration-heavy callers.
std::vector<std::uint64_t> first_n_prime_values(std::size_t n);

}  // namespace storen
