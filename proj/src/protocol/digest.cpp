#include "storen/protocol/digest.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "storen/error.hpp"

namespace storen {

namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'E', 'N', 'F'};

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
}

template <class T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
  return static_cast<T>(v);
}

class BitWriter {
 public:
  void write(std::uint64_t value, unsigned width) {
    for (unsigned b = 0; b < width; ++b) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      if (value >> b & 1) bytes_.back() |= static_cast<std::uint8_t>(1u << (bits_ % 8));
      ++bits_;
    }
  }
  PackedDigest finish() && { return {std::move(bytes_), bits_}; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const PackedDigest& p) : p_(p) {}
  std::uint64_t read(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < width; ++b, ++pos_) {
      require(pos_ < p_.bits, ErrorKind::MalformedInput, "packed digest truncated");
      if (p_.bytes[pos_ / 8] >> (pos_ % 8) & 1) v |= std::uint64_t{1} << b;
    }
    return v;
  }
  bool exhausted() const noexcept { return pos_ == p_.bits; }

 private:
  const PackedDigest& p_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(ProtocolVariant v) noexcept {
  switch (v) {
    case ProtocolVariant::Single: return "single";
    case ProtocolVariant::Trivial: return "trivial";
    case ProtocolVariant::Linear: return "linear";
    case ProtocolVariant::RsParity: return "rs-parity";
  }
  return "unknown";
}

ProtocolVariant parse_variant(std::string_view name) {
  for (auto v : {ProtocolVariant::Single, ProtocolVariant::Trivial, ProtocolVariant::Linear, ProtocolVariant::RsParity}) {
    if (name == to_string(v)) return v;
  }
  fail(ErrorKind::Usage, "unknown protocol variant '" + std::string(name) + "'");
}

std::vector<std::uint8_t> encode_digest_file(const Digest& d) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint16_t>(out, kDigestFormatVersion);
  out.push_back(static_cast<std::uint8_t>(d.variant));
  out.insert(out.end(), d.family_fingerprint.begin(), d.family_fingerprint.end());
  put_le<std::uint64_t>(out, d.beta);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.gammas.size()));
  for (std::uint64_t g : d.gammas) put_le<std::uint64_t>(out, g);
  return out;
}

Digest decode_digest_file(std::span<const std::uint8_t> bytes) {
  require(bytes.size() >= kDigestHeaderBytes, ErrorKind::MalformedInput, "digest file truncated");
  require(std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()), ErrorKind::MalformedInput,
          "digest file has bad magic");
  require(get_le<std::uint16_t>(bytes, 4) == kDigestFormatVersion, ErrorKind::MalformedInput,
          "unsupported digest format version");
  require(bytes[6] <= static_cast<std::uint8_t>(ProtocolVariant::RsParity), ErrorKind::MalformedInput,
          "unknown digest variant");
  Digest d;
  d.variant = static_cast<ProtocolVariant>(bytes[6]);
  std::copy_n(bytes.begin() + 7, 32, d.family_fingerprint.begin());
  d.beta = get_le<std::uint64_t>(bytes, 39);
  const std::uint32_t count = get_le<std::uint32_t>(bytes, 47);
  require(bytes.size() == kDigestHeaderBytes + 8ull * count, ErrorKind::MalformedInput, "digest file length mismatch");
  require(d.beta >= 1, ErrorKind::MalformedInput, "digest beta must be positive");
  for (std::uint32_t i = 0; i < count; ++i) d.gammas.push_back(get_le<std::uint64_t>(bytes, kDigestHeaderBytes + 8ull * i));
  return d;
}

PackedDigest pack_digest(const Digest& d, const HashFamily& fam) {
  require(d.beta >= 1 && d.beta <= fam.n(), ErrorKind::Usage, "digest beta outside the family");
  const unsigned width = fam.max_modulus().residue_bits();
  BitWriter w;
  w.write(d.beta - 1, ceil_log2(fam.n()));
  for (std::uint64_t g : d.gammas) {
    require(g < fam.max_modulus().value(), ErrorKind::Usage, "digest gamma outside the alphabet");
    w.write(g, width);
  }
  return std::move(w).finish();
}

Digest unpack_digest(const PackedDigest& packed, const HashFamily& fam, ProtocolVariant variant,
                     std::size_t gamma_count) {
  BitReader r(packed);
  Digest d;
  d.variant = variant;
  d.family_fingerprint = fam.fingerprint();
  d.beta = r.read(ceil_log2(fam.n())) + 1;
  const unsigned width = fam.max_modulus().residue_bits();
  for (std::size_t i = 0; i < gamma_count; ++i) d.gammas.push_back(r.read(width));
  require(r.exhausted(), ErrorKind::MalformedInput, "packed digest has trailing bits");
  return d;
}

std::size_t resource_bound_bits(const HashFamily& fam, std::size_t gamma_count) {
  return ceil_log2(fam.n()) + gamma_count * fam.max_modulus().residue_bits();
}

}  // namespace storen
