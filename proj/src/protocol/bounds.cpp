#include "storen/protocol/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "storen/error.hpp"

namespace storen {

std::string SlackReport::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f + c0", numeric_bits);
  return buf;
}

SlackReport storage_bound_slack(ProtocolVariant variant, const SlackParams& p) {
  require(p.n >= 1 && p.q >= 2 && p.list_size >= 1 && p.provers >= 1, ErrorKind::Usage,
          "slack needs n >= 1, q >= 2, L >= 1, s >= 1");
  const double log_n = std::log2(static_cast<double>(p.n));
  const double log_q = std::log2(static_cast<double>(p.q));
  const double log_l = std::log2(static_cast<double>(p.list_size));
  const double s = static_cast<double>(p.provers);
  // log log(qn) is only defined for qn > 2; below that the term is taken as zero.
  const double log_qn = log_q + log_n;
  const double loglog = log_qn > 1.0 ? std::log2(log_qn) : 0.0;

  SlackReport r;
  r.variant = variant;
  switch (variant) {
    case ProtocolVariant::Single:
      r.numeric_bits = log_q + log_l + 3 * log_n + 2 * loglog;
      r.formula = "log(q L n^3) + 2 log log(q n) + c0";
      break;
    case ProtocolVariant::Trivial:
      r.numeric_bits = s + 2 * std::log2(s) + log_q + s * log_l + 4 * log_n + 2 * loglog;
      r.formula = "s + log(s^2 q L^s n^4) + 2 log log(q n) + c0";
      break;
    case ProtocolVariant::Linear:
    case ProtocolVariant::RsParity:
      r.numeric_bits = s + 2 * std::log2(s) + log_q + log_l + 4 * log_n + 2 * loglog;
      r.formula = "s + log(s^2 q L n^4) + 2 log log(q n) + c0";
      break;
  }
  return r;
}

}  // namespace storen
