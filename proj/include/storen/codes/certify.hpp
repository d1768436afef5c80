#pragma once

#include <set>
#include <string>
#include <vector>

namespace storen {

/// One row of the small-instance certification table.
struct CertifyRow {
  std::string name;    // suite id: distance, johnson, collision, rs-decode
  std::string detail;  // instance and observed value
  bool passed = false;
  double seconds = 0.0;
};

inline const std::set<std::string> kCertifySuites = {"distance", "johnson", "collision", "rs-decode"};

/// Runs every exhaustive suite. Suites named in `sabotage` get a deliberate fault injected
/// (test-only; checks that a broken build really shows up red). Unknown names throw Usage.
std::vector<CertifyRow> run_certification(const std::set<std::string>& sabotage = {});

/// Every codeword of RS(m, ell) over GF(q) with every error/erasure pattern inside the
/// r-error, e-erasure budget; returns the number of decodes that did not return the
/// true message with the exact error set. `extra_error` pushes one more error than the
/// pattern allows (used for sabotage).
std::uint64_t rs_decode_soundness_failures(std::uint64_t q, std::size_t m, std::size_t ell, std::size_t r,
                                           std::size_t e, std::uint64_t* decodes = nullptr, bool extra_error = false);

}  // namespace storen
