#include "storen/transport/wire.hpp"

#include <cstring>

#include "storen/error.hpp"

namespace storen {

namespace {

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <class T>
T get_le(const std::uint8_t* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
  return v;
}

}  // namespace

WireType type_of(const WireMessage& m) noexcept { return static_cast<WireType>(m.index() == 4 ? 0x7F : m.index()); }

std::size_t frame_length(std::uint8_t type_byte) {
  switch (static_cast<WireType>(type_byte)) {
    case WireType::Hello: return 1 + 2 + 32;
    case WireType::Challenge:
    case WireType::Response: return 1 + 8;
    case WireType::NoResponse: return 1;
    case WireType::Error: return 1 + 2;
  }
  fail(ErrorKind::Protocol, "unknown wire message type " + std::to_string(type_byte));
}

void append_message(std::vector<std::uint8_t>& out, const WireMessage& m) {
  out.push_back(static_cast<std::uint8_t>(type_of(m)));
  if (const auto* h = std::get_if<HelloMsg>(&m)) {
    put_le(out, h->version);
    out.insert(out.end(), h->family_fingerprint.begin(), h->family_fingerprint.end());
  } else if (const auto* c = std::get_if<ChallengeMsg>(&m)) {
    put_le(out, c->beta);
  } else if (const auto* r = std::get_if<ResponseMsg>(&m)) {
    put_le(out, r->value);
  } else if (const auto* e = std::get_if<ErrorMsg>(&m)) {
    put_le(out, e->code);
  }
}

std::vector<std::uint8_t> encode_message(const WireMessage& m) {
  std::vector<std::uint8_t> out;
  append_message(out, m);
  return out;
}

std::optional<Decoded> decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) return std::nullopt;
  const std::size_t len = frame_length(bytes[0]);
  if (bytes.size() < len) return std::nullopt;
  const std::uint8_t* p = bytes.data() + 1;
  switch (static_cast<WireType>(bytes[0])) {
    case WireType::Hello: {
      HelloMsg h{get_le<std::uint16_t>(p), {}};
      std::memcpy(h.family_fingerprint.data(), p + 2, h.family_fingerprint.size());
      return Decoded{h, len};
    }
    case WireType::Challenge: return Decoded{ChallengeMsg{get_le<std::uint64_t>(p)}, len};
    case WireType::Response: return Decoded{ResponseMsg{get_le<std::uint64_t>(p)}, len};
    case WireType::NoResponse: return Decoded{NoResponseMsg{}, len};
    case WireType::Error: return Decoded{ErrorMsg{get_le<std::uint16_t>(p)}, len};
  }
  fail(ErrorKind::Protocol, "unknown wire message type");
}

}  // namespace storen
