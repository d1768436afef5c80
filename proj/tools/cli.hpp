#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"

namespace storen::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kUsage = 2, kUndecidable = 3, kIo = 4 };

/// Entry point shared by the binary and the tests. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Set by SIGINT/SIGTERM (or tests) to end `serve`.
std::atomic<bool>& stop_flag();

/// Smallest b with 256^b >= q.
std::size_t bytes_per_symbol(std::uint64_t q);

/// Raw data file -> message. Polynomial: big-endian symbols of bytes_per_symbol(q) bytes,
/// each < q, at most k of them, missing trailing symbols are zero. KarpRabin: the whole file
/// is one big-endian natural below the message bound. Throws Usage on empty or ill-fitting data.
Message message_from_data(const HashFamily& fam, std::span<const std::uint8_t> bytes);

}  // namespace storen::cli
