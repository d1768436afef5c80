#include "storen/codes/reed_solomon.hpp"

#include "storen/algebra/field_element.hpp"
#include "storen/algebra/linear_system.hpp"
#include "storen/error.hpp"

namespace storen {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients, constant term first

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = add_mod(mul_mod(acc, x, p), *it, p);
  return acc;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Quotient of num / den when den divides num exactly; nullopt otherwise. den must be monic.
std::optional<Poly> divide_exact(Poly num, const Poly& den, std::uint64_t p) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) {
    if (num.empty()) return Poly{};
    return std::nullopt;
  }
  Poly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::uint64_t c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = sub_mod(num[i - dd + j], mul_mod(c, den[j], p), p);
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) return std::nullopt;
  }
  trim(quot);
  return quot;
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
Poly interpolate(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys, std::uint64_t p) {
  Poly result(xs.size(), 0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis{1};
    std::uint64_t denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      Poly next(basis.size() + 1, 0);
      const std::uint64_t neg = sub_mod(0, xs[j], p);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t] = add_mod(next[t], mul_mod(basis[t], neg, p), p);
        next[t + 1] = add_mod(next[t + 1], basis[t], p);
      }
      basis = std::move(next);
      denom = mul_mod(denom, sub_mod(xs[i], xs[j], p), p);
    }
    const std::uint64_t scale = mul_mod(ys[i], pow_mod(denom, p - 2, p), p);
    for (std::size_t t = 0; t < basis.size(); ++t) result[t] = add_mod(result[t], mul_mod(basis[t], scale, p), p);
  }
  return result;
}

}  // namespace

SystematicRSCode::SystematicRSCode(std::size_t message_length, std::size_t block_length, PrimeModulus q)
    : m_(message_length), ell_(block_length), q_(q) {
  require(m_ >= 1, ErrorKind::Parameter, "RS message length must be positive");
  require(m_ <= ell_, ErrorKind::Parameter, "RS block length must be at least the message length");
  require(ell_ <= q.value(), ErrorKind::Parameter, "RS block length exceeds the field size");
}

Codeword rs_encode_systematic(const SystematicRSCode& code, std::span<const std::uint64_t> v) {
  const std::uint64_t p = code.field().value();
  require(v.size() == code.message_length(), ErrorKind::Usage, "rs_encode: message length differs from m");
  std::vector<std::uint64_t> xs(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    require(v[j] < p, ErrorKind::Usage, "rs_encode: symbol out of field range");
    xs[j] = j;
  }
  const Poly f = interpolate(xs, v, p);
  Codeword out;
  out.symbols.reserve(code.block_length());
  for (std::size_t j = 0; j < code.block_length(); ++j) out.symbols.push_back(eval(f, j, p));
  return out;
}

std::optional<RsDecoding> rs_decode_errors_erasures(const SystematicRSCode& code, const ReceivedWord& z) {
  const std::uint64_t p = code.field().value();
  const std::size_t m = code.message_length();
  require(z.size() == code.block_length(), ErrorKind::Usage, "rs_decode: received word length differs from ell");

  std::vector<std::uint64_t> xs;
  std::vector<std::uint64_t> ys;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!z[j]) continue;
    require(*z[j] < p, ErrorKind::Usage, "rs_decode: symbol out of field range");
    xs.push_back(j);
    ys.push_back(*z[j]);
  }
  const std::size_t erasures = z.size() - xs.size();
  if (erasures > code.redundancy()) return std::nullopt;

  // Berlekamp-Welch on the punctured code: find monic E of degree t and Q of degree < m + t
  // with Q(x_j) = y_j E(x_j). Unknowns: e_0..e_{t-1}, then Q's m + t coefficients.
  const std::size_t t = (xs.size() - m) / 2;
  const std::size_t unknowns = t + m + t;
  ModMatrix a(xs.size(), unknowns);
  std::vector<std::uint64_t> b(xs.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    std::uint64_t power = 1;
    for (std::size_t u = 0; u < m + t; ++u) {
      if (u < t) a(r, u) = sub_mod(0, mul_mod(ys[r], power, p), p);
      a(r, t + u) = power;
      if (u == t) b[r] = mul_mod(ys[r], power, p);
      power = mul_mod(power, xs[r], p);
    }
  }
  const auto solution = solve_mod(std::move(a), std::move(b), p);
  if (!solution) return std::nullopt;

  Poly locator(solution->begin(), solution->begin() + static_cast<std::ptrdiff_t>(t));
  locator.push_back(1);
  const Poly numerator(solution->begin() + static_cast<std::ptrdiff_t>(t), solution->end());
  const auto quotient = divide_exact(numerator, locator, p);
  if (!quotient || quotient->size() > m) return std::nullopt;

  RsDecoding out;
  for (std::size_t j = 0; j < m; ++j) out.message.push_back(eval(*quotient, j, p));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    if (eval(*quotient, xs[r], p) != ys[r]) out.error_positions.insert(xs[r] + 1);
  }
  if (2 * out.error_positions.size() + erasures > code.redundancy()) return std::nullopt;
  return out;
}

}  // namespace storen
