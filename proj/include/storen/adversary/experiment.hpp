#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "storen/adversary/strategy.hpp"
#include "storen/hash/family.hpp"
#include "storen/hash/message.hpp"
#include "storen/protocol/digest.hpp"
#include "storen/protocol/rng.hpp"

namespace storen {

/// Uniform message of the family (KarpRabin: uniform below the product of the first k primes).
Message random_message(const HashFamily& fam, Rng& rng);

enum class MessageSource {
  Random,          // one message drawn from the seed, fixed for the whole experiment
  Zero,            // the all-zero (maximally compressible) message
  RandomPerTrial,  // fresh message every trial
};

struct ExperimentConfig {
  explicit ExperimentConfig(HashFamily f) : fam(std::move(f)) {}

  HashFamily fam;
  MessageSource source = MessageSource::Random;
  std::optional<Message> message;  // overrides `source` when set
  ProtocolVariant variant = ProtocolVariant::Single;
  std::uint64_t s = 1;
  std::uint64_t r = 0;
  std::uint64_t e = 0;
  ProverStrategy strategy{Honest{}};
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ExperimentReport {
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  double empirical_rate = 0.0;
  std::optional<double> analytic_rate;
  std::size_t retained_bits = 0;  // summed over provers
  // rs-parity only: trials whose verdict was within budget but whose accused/erased sets
  // differ from the provers that actually answered wrong / stayed silent.
  std::uint64_t identification_mismatches = 0;
  std::uint64_t undecidable = 0;
  std::string config_echo;
  std::uint64_t seed = 0;
  std::string prng = std::string(kPrngId);

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Throws Usage on inconsistent configuration.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Single-prover closed form: (1/n)·Σ_β Pr[answer_β correct], for strategies where it is known.
std::optional<double> analytic_pass_rate(const ExperimentConfig& config);

struct SweepRow {
  std::optional<std::uint64_t> t;  // empty for strategies without a storage parameter
  ExperimentReport report;
};

/// One experiment per t. The (inner) strategy's t is replaced; strategies without a t
/// become PartialCodeword(t).
std::vector<SweepRow> sweep(const ExperimentConfig& config, const std::vector<std::uint64_t>& t_values);

inline constexpr const char* kCsvHeader = "t,retained_bits,trials,passes,empirical_rate,analytic_rate";
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Parsed key=value experiment file. Keys: kind, k, epsilon, variant, strategy, t (a
/// comma list turns the run into a sweep), trials, seed, s, r, e, plus message
/// (random | zero | random-per-trial), members (colluding provers) and threads.
struct ExperimentPlan {
  ExperimentConfig config;
  std::vector<std::uint64_t> t_values;  // empty: single run
};

ExperimentPlan parse_experiment_config(std::istream& is);
std::vector<SweepRow> run_plan(const ExperimentPlan& plan);

}  // namespace storen
