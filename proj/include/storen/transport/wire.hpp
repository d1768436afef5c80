#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "storen/hash/family.hpp"

namespace storen {

inline constexpr std::uint16_t kWireVersion = 1;

enum class WireType : std::uint8_t { Hello = 0x00, Challenge = 0x01, Response = 0x02, NoResponse = 0x03, Error = 0x7F };

struct HelloMsg {
  std::uint16_t version = kWireVersion;
  Fingerprint family_fingerprint{};
  friend bool operator==(const HelloMsg&, const HelloMsg&) = default;
};
struct ChallengeMsg {
  std::uint64_t beta = 0;
  friend bool operator==(const ChallengeMsg&, const ChallengeMsg&) = default;
};
struct ResponseMsg {
  std::uint64_t value = 0;
  friend bool operator==(const ResponseMsg&, const ResponseMsg&) = default;
};
struct NoResponseMsg {
  friend bool operator==(const NoResponseMsg&, const NoResponseMsg&) = default;
};
struct ErrorMsg {
  std::uint16_t code = 0;
  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

using WireMessage = std::variant<HelloMsg, ChallengeMsg, ResponseMsg, NoResponseMsg, ErrorMsg>;

/// Codes carried by ERROR frames.
enum class WireError : std::uint16_t {
  VersionMismatch = 1,
  FingerprintMismatch = 2,
  UnexpectedMessage = 3,
  ChallengeOutOfRange = 4,
  Malformed = 5,
};

WireType type_of(const WireMessage& m) noexcept;
/// Whole frame length (type byte included). Throws Protocol for an unknown type byte.
std::size_t frame_length(std::uint8_t type_byte);

std::vector<std::uint8_t> encode_message(const WireMessage& m);
void append_message(std::vector<std::uint8_t>& out, const WireMessage& m);

struct Decoded {
  WireMessage message;
  std::size_t consumed = 0;
};
/// Decodes the frame at the start of `bytes`; nullopt means more bytes are needed.
/// Throws Protocol for an unknown type byte.
std::optional<Decoded> decode_message(std::span<const std::uint8_t> bytes);

}  // namespace storen
