#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "storen/hash/family.hpp"

namespace storen {

enum class ProtocolVariant : std::uint8_t { Single = 0, Trivial = 1, Linear = 2, RsParity = 3 };

const char* to_string(ProtocolVariant v) noexcept;
ProtocolVariant parse_variant(std::string_view name);

/// The verifier's entire retained state for one audit: a challenge index and the
/// expected value(s). Single-use.
///
///  Single   one gamma, h_beta(x)
///  Trivial  s gammas, H(x_i)_beta per chunk
///  Linear   one gamma, H(x)_beta
///  RsParity 2r+e parity symbols of the systematic RS encoding of the per-prover hashes
struct Digest {
  ProtocolVariant variant = ProtocolVariant::Single;
  Fingerprint family_fingerprint{};
  std::uint64_t beta = 1;
  std::vector<std::uint64_t> gammas;

  friend bool operator==(const Digest&, const Digest&) = default;
};

inline constexpr std::uint16_t kDigestFormatVersion = 1;
/// "SENF" | version u16 | variant u8 | fingerprint 32 | beta u64 | gamma count u32
inline constexpr std::size_t kDigestHeaderBytes = 4 + 2 + 1 + 32 + 8 + 4;

/// Versioned little-endian file encoding, header then one u64 per gamma.
std::vector<std::uint8_t> encode_digest_file(const Digest& d);
/// Throws MalformedInput on bad magic, version, variant, or length.
Digest decode_digest_file(std::span<const std::uint8_t> bytes);

/// Bit-packed digest payload: beta-1 in ceil(log2 n) bits, then each gamma in
/// ceil(log2 q) bits (q the family's largest alphabet). This is the verifier storage
/// the resource bounds count; the file format adds a fixed header and word alignment.
struct PackedDigest {
  std::vector<std::uint8_t> bytes;
  std::size_t bits = 0;
};

PackedDigest pack_digest(const Digest& d, const HashFamily& fam);
Digest unpack_digest(const PackedDigest& packed, const HashFamily& fam, ProtocolVariant variant,
                     std::size_t gamma_count);

/// ceil(log2 n) + gamma_count * ceil(log2 q): the verifier-storage term of each
/// variant's resource bound (gamma_count = 1, s, 1, 2r+e).
std::size_t resource_bound_bits(const HashFamily& fam, std::size_t gamma_count);

}  // namespace storen
