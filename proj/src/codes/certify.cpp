#include "storen/codes/certify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "storen/codes/exhaustive.hpp"
#include "storen/codes/reed_solomon.hpp"
#include "storen/error.hpp"

namespace storen {

namespace {

// Calls fn(subset) for every subset of `pool` of size <= max_size.
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t max_size,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    fn(chosen);
    if (chosen.size() == max_size) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      chosen.push_back(pool[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

template <class Fn>
CertifyRow timed(const std::string& name, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CertifyRow row{name, "", false, 0.0};
  fn(row);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::uint64_t rs_decode_soundness_failures(std::uint64_t q, std::size_t m, std::size_t ell, std::size_t r,
                                           std::size_t e, std::uint64_t* decodes, bool extra_error) {
  const SystematicRSCode code(m, ell, PrimeModulus(q));
  std::uint64_t failures = 0, count = 0;
  std::vector<std::uint64_t> v(m, 0);
  std::uint64_t messages = 1;
  for (std::size_t i = 0; i < m; ++i) messages *= q;

  for (std::uint64_t rank = 0; rank < messages; ++rank) {
    for (std::size_t i = 0, t = rank; i < m; ++i, t /= q) v[i] = t % q;
    const Codeword c = rs_encode_systematic(code, v);
    std::vector<std::size_t> positions(ell);
    for (std::size_t i = 0; i < ell; ++i) positions[i] = i;

    for_each_subset(positions, r, [&](const std::vector<std::size_t>& errs) {
      const std::size_t erasure_budget = 2 * r + e - 2 * errs.size();
      std::vector<std::size_t> rest;
      for (std::size_t p : positions) {
        if (std::find(errs.begin(), errs.end(), p) == errs.end()) rest.push_back(p);
      }
      // Every non-zero offset on every error position.
      std::vector<std::uint64_t> offsets(errs.size(), 1);
      for (;;) {
        for_each_subset(rest, std::min(erasure_budget, rest.size()), [&](const std::vector<std::size_t>& erased) {
          ReceivedWord z = as_received(c);
          std::set<std::size_t> truth;
          for (std::size_t j = 0; j < errs.size(); ++j) {
            z[errs[j]] = (c.symbols[errs[j]] + offsets[j]) % q;
            truth.insert(errs[j] + 1);
          }
          for (std::size_t p : erased) z[p] = std::nullopt;
          if (extra_error) {
            // One more error than the budget admits, on the first untouched position.
            for (std::size_t p : rest) {
              if (std::find(erased.begin(), erased.end(), p) == erased.end()) {
                z[p] = (c.symbols[p] + 1) % q;
                truth.insert(p + 1);
                break;
              }
            }
          }
          ++count;
          const auto d = rs_decode_errors_erasures(code, z);
          if (!d || d->message != v || d->error_positions != truth) ++failures;
        });
        std::size_t j = 0;
        while (j < offsets.size() && ++offsets[j] == q) offsets[j++] = 1;
        if (j == offsets.size()) break;
      }
    });
  }
  if (decodes != nullptr) *decodes = count;
  return failures;
}

std::vector<CertifyRow> run_certification(const std::set<std::string>& sabotage) {
  for (const auto& s : sabotage) {
    require(kCertifySuites.count(s) != 0, ErrorKind::Usage, "unknown certification suite '" + s + "'");
  }
  const auto broken = [&](const char* name) { return sabotage.count(name) != 0; };
  std::vector<CertifyRow> rows;

  struct Instance {
    HashFamily fam;
    const char* label;
  };
  const std::vector<Instance> instances{
      {HashFamily::polynomial(2, 5, PrimeModulus(5)), "polynomial q=5 k=2 n=5"},
      {HashFamily::polynomial(3, 7, PrimeModulus(7)), "polynomial q=7 k=3 n=7"},
      {HashFamily::karp_rabin(2, 4), "karp-rabin k=2 n=4"},
  };

  for (const auto& inst : instances) {
    rows.push_back(timed("distance", [&](CertifyRow& row) {
      const std::size_t d = min_distance_exhaustive(inst.fam);
      // Sabotage: demand one more than the MDS distance.
      const std::size_t expected = inst.fam.n() - inst.fam.k() + 1 + (broken("distance") ? 1 : 0);
      std::ostringstream os;
      os << inst.label << ": d=" << d << " expected " << expected;
      row.detail = os.str();
      row.passed = d == expected;
    }));
  }

  rows.push_back(timed("johnson", [&](CertifyRow& row) {
    const auto& fam = instances[0].fam;
    const std::size_t radius = johnson_radius(fam.n(), fam.n() - fam.k() + 1);
    const std::uint64_t bound = johnson_list_bound(fam) - (broken("johnson") ? 49 : 0);
    const std::uint64_t q = fam.field().value();
    std::uint64_t words = 1;
    for (std::uint64_t i = 0; i < fam.n(); ++i) words *= q;
    std::size_t worst = 0;
    ReceivedWord z(fam.n());
    for (std::uint64_t w = 0; w < words; ++w) {
      for (std::size_t i = 0, t = w; i < fam.n(); ++i, t /= q) z[i] = t % q;
      worst = std::max(worst, list_size(fam, z, radius));
    }
    std::ostringstream os;
    os << instances[0].label << ": " << words << " words, radius " << radius << ", max list " << worst << " <= "
       << bound;
    row.detail = os.str();
    row.passed = worst <= bound;
  }));

  for (const auto& inst : instances) {
    rows.push_back(timed("collision", [&](CertifyRow& row) {
      const Rational p = collision_probability_exact(inst.fam);
      Rational bound = inst.fam.collision_bound();
      if (broken("collision")) bound = Rational::make(0, 1);
      std::ostringstream os;
      os << inst.label << ": " << p.num << "/" << p.den << " <= " << bound.num << "/" << bound.den;
      row.detail = os.str();
      row.passed = !(bound < p);
    }));
  }

  rows.push_back(timed("rs-decode", [&](CertifyRow& row) {
    std::uint64_t decodes = 0;
    const auto failures = rs_decode_soundness_failures(7, 2, 6, 1, 2, &decodes, broken("rs-decode"));
    std::ostringstream os;
    os << "q=7 m=2 ell=6 r=1 e=2: " << decodes << " decodes, " << failures << " wrong";
    row.detail = os.str();
    row.passed = failures == 0 && decodes > 0;
  }));
  return rows;
}

}  // namespace storen
