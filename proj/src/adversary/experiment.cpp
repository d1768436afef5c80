#include "storen/adversary/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "storen/error.hpp"
#include "storen/protocol/protocol.hpp"

namespace storen {

Message random_message(const HashFamily& fam, Rng& rng) {
  if (fam.kind() == FamilyKind::Polynomial) {
    std::vector<std::uint64_t> values(fam.k());
    for (auto& v : values) v = rng.below(fam.field().value());
    return Message::symbols(values, fam.field());
  }
  const BigNat& bound = fam.message_space_size();
  const std::size_t bits = bound.bit_length();
  const std::size_t limbs = (bits + 31) / 32;
  for (;;) {
    std::vector<BigNat::Limb> draw(limbs);
    for (auto& l : draw) l = static_cast<BigNat::Limb>(rng.next());
    if (bits % 32 != 0) draw.back() &= (BigNat::Limb{1} << (bits % 32)) - 1;
    BigNat candidate = BigNat::from_limbs(std::move(draw));
    if (candidate < bound) return Message::natural(std::move(candidate));
  }
}

namespace {

constexpr std::uint64_t kMessageStream = std::numeric_limits<std::uint64_t>::max();

std::size_t provers_of(const ExperimentConfig& c) { return c.variant == ProtocolVariant::Single ? 1 : c.s; }

// Everything a trial needs that depends on x only.
struct Setup {
  Message x;
  std::vector<Message> held;  // per prover
  std::vector<ProverStore> stores;
};

class Engine {
 public:
  explicit Engine(const ExperimentConfig& c) : c_(c) {
    require(c.trials >= 1, ErrorKind::Usage, "trials must be at least 1");
    const std::size_t provers = provers_of(c);
    require(provers >= 1, ErrorKind::Usage, "s must be at least 1");
    if (c.variant != ProtocolVariant::Single) {
      plan_.emplace(c.fam.k(), c.s);
      if (c.variant == ProtocolVariant::Trivial) {
        const std::uint64_t len = plan_->chunk_length();
        chunk_fam_ = c.fam.kind() == FamilyKind::Polynomial ? HashFamily::polynomial(len, c.fam.n(), c.fam.field())
                                                            : HashFamily::karp_rabin(len, c.fam.n());
        require(c.fam.kind() == FamilyKind::Polynomial, ErrorKind::Usage,
                "trivial variant splits symbol messages; KarpRabin messages have no chunk structure");
      }
    }
    if (c.variant != ProtocolVariant::RsParity) {
      require(c.r == 0 && c.e == 0, ErrorKind::Usage, "r and e apply to the rs-parity variant only");
    }
    if (c.variant == ProtocolVariant::Single) {
      require(c.s == 1, ErrorKind::Usage, "single variant has exactly one prover");
    }
    if (c.message) check_conforms(c.fam, *c.message);
    strategies_ = assign_strategies(c.strategy, provers);
  }

  Message message_for(Rng& trial_rng) const {
    if (c_.message) return *c_.message;
    switch (c_.source) {
      case MessageSource::Zero: return zero_message(c_.fam);
      case MessageSource::Random: {
        Rng rng = Rng::for_stream(c_.seed, kMessageStream);
        return random_message(c_.fam, rng);
      }
      case MessageSource::RandomPerTrial: return random_message(c_.fam, trial_rng);
    }
    return zero_message(c_.fam);
  }

  std::unique_ptr<Setup> setup(Message x) const {
    auto out = std::make_unique<Setup>(Setup{std::move(x), {}, {}});
    const std::size_t provers = strategies_.size();
    out->held.reserve(provers);
    for (std::size_t i = 1; i <= provers; ++i) {
      switch (c_.variant) {
        case ProtocolVariant::Single: out->held.push_back(out->x); break;
        case ProtocolVariant::Trivial: out->held.push_back(chunk_of(out->x, *plan_, i)); break;
        default: out->held.push_back(zero_extended_chunk(out->x, *plan_, i)); break;
      }
    }
    for (std::size_t i = 0; i < provers; ++i) {
      ProverInput input = ProverInput::whole(prover_fam(), out->held[i]);
      if (c_.variant == ProtocolVariant::Linear || c_.variant == ProtocolVariant::RsParity) {
        input.offset = plan_->offset(i + 1);
        input.length = plan_->chunk_length();
      }
      out->stores.push_back(ProverStore::build(strategies_[i], input));
    }
    return out;
  }

  Digest preprocess(const Setup& s, std::uint64_t beta) const {
    switch (c_.variant) {
      case ProtocolVariant::Single: return single_preprocess_at(c_.fam, s.x, beta);
      case ProtocolVariant::Trivial: return multi_trivial_preprocess_at(*chunk_fam_, s.held, beta);
      case ProtocolVariant::Linear: return multi_linear_preprocess_at(c_.fam, s.x, *plan_, beta);
      case ProtocolVariant::RsParity: return multi_rs_preprocess_at(c_.fam, s.x, *plan_, c_.r, c_.e, beta);
    }
    fail(ErrorKind::Usage, "unknown protocol variant");
  }

  const HashFamily& prover_fam() const { return chunk_fam_ ? *chunk_fam_ : c_.fam; }

  struct Counts {
    std::uint64_t passes = 0, mismatches = 0, undecidable = 0;
  };

  void trial(std::uint64_t index, const Setup* fixed, Counts& counts) const {
    Rng rng = Rng::for_stream(c_.seed, index + 1);
    std::unique_ptr<Setup> own;
    if (fixed == nullptr) {
      own = setup(message_for(rng));
      fixed = own.get();
    }
    const std::uint64_t beta = rng.index(c_.fam.n());
    const Digest digest = preprocess(*fixed, beta);
    std::vector<Response> responses;
    responses.reserve(fixed->stores.size());
    for (const auto& store : fixed->stores) responses.push_back({beta, store.answer(beta, rng)});
    const Verdict verdict = verify(prover_fam(), digest, responses);
    if (verdict.accepted()) ++counts.passes;
    if (c_.variant != ProtocolVariant::RsParity) return;
    if (verdict.outcome == Outcome::Undecidable) {
      ++counts.undecidable;
      return;
    }
    std::set<std::size_t> wrong, silent;
    for (std::size_t i = 0; i < responses.size(); ++i) {
      if (!responses[i].value) {
        silent.insert(i + 1);
      } else if (*responses[i].value != honest_answer(prover_fam(), fixed->held[i], beta)) {
        wrong.insert(i + 1);
      }
    }
    const bool within_budget = 2 * wrong.size() + silent.size() <= 2 * c_.r + c_.e;
    if (within_budget && (verdict.accused != wrong || verdict.erased != silent)) ++counts.mismatches;
  }

  ExperimentReport run() const {
    const bool per_trial = !c_.message && c_.source == MessageSource::RandomPerTrial;
    std::unique_ptr<Setup> fixed;
    std::size_t retained = 0;
    {
      Rng probe = Rng::for_stream(c_.seed, 1);
      fixed = setup(message_for(probe));
      for (const auto& s : fixed->stores) retained += s.retained_bits();
      if (per_trial) fixed.reset();
    }

    unsigned threads = c_.threads != 0 ? c_.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, (c_.trials + 1023) / 1024));
    threads = std::max(1u, threads);
    std::vector<Counts> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    const auto work = [&](unsigned w) {
      try {
        const std::uint64_t begin = c_.trials * w / threads, end = c_.trials * (w + 1) / threads;
        for (std::uint64_t t = begin; t < end; ++t) trial(t, fixed.get(), partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    ExperimentReport report;
    report.trials = c_.trials;
    for (const auto& p : partial) {
      report.passes += p.passes;
      report.identification_mismatches += p.mismatches;
      report.undecidable += p.undecidable;
    }
    report.empirical_rate = static_cast<double>(report.passes) / static_cast<double>(report.trials);
    report.analytic_rate = analytic_pass_rate(c_);
    report.retained_bits = retained;
    report.seed = c_.seed;
    report.config_echo = echo();
    return report;
  }

  std::string echo() const {
    std::ostringstream os;
    os << "kind=" << to_string(c_.fam.kind()) << " k=" << c_.fam.k() << " n=" << c_.fam.n();
    if (c_.fam.kind() == FamilyKind::Polynomial) os << " q=" << c_.fam.field().value();
    os << " variant=" << to_string(c_.variant) << " s=" << c_.s << " r=" << c_.r << " e=" << c_.e
       << " strategy=" << describe(c_.strategy) << " trials=" << c_.trials << " seed=" << c_.seed << " message="
       << (c_.message                                   ? "explicit"
           : c_.source == MessageSource::Zero           ? "zero"
           : c_.source == MessageSource::RandomPerTrial ? "random-per-trial"
                                                        : "random");
    return os.str();
  }

 private:
  const ExperimentConfig& c_;
  std::optional<ChunkPlan> plan_;
  std::optional<HashFamily> chunk_fam_;
  std::vector<ProverStrategy> strategies_;
};

bool message_is_zero(const ExperimentConfig& c) {
  if (c.message) return *c.message == zero_message(c.fam);
  return c.source == MessageSource::Zero;
}

}  // namespace

std::optional<double> analytic_pass_rate(const ExperimentConfig& c) {
  const auto& kind = c.strategy.kind;
  if (std::holds_alternative<Honest>(kind)) return 1.0;
  if (c.variant != ProtocolVariant::Single) return std::nullopt;
  if (const auto* u = std::get_if<Unresponsive>(&kind)) return 1.0 - u->probability;
  if (std::holds_alternative<ZeroAnswerer>(kind) && message_is_zero(c)) return 1.0;
  std::uint64_t t = 0;
  if (const auto* p = std::get_if<PartialCodeword>(&kind)) {
    t = p->t;
  } else if (!std::holds_alternative<UniformGuesser>(kind)) {
    return std::nullopt;
  }
  // Stored coordinates always pass; the others pass when the uniform guess hits.
  double sum = static_cast<double>(std::min(t, c.fam.n()));
  for (std::uint64_t i = t + 1; i <= c.fam.n(); ++i) sum += 1.0 / static_cast<double>(c.fam.coordinate_modulus(i).value());
  return sum / static_cast<double>(c.fam.n());
}

ExperimentReport run_experiment(const ExperimentConfig& config) { return Engine(config).run(); }

namespace {

ProverStrategy with_t(const ProverStrategy& s, std::uint64_t t) {
  if (const auto* c = std::get_if<Colluding>(&s.kind)) {
    Colluding out = *c;
    out.inner = std::make_shared<const ProverStrategy>(with_t(c->inner ? *c->inner : ProverStrategy{Honest{}}, t));
    return {out};
  }
  if (std::holds_alternative<PartialRaw>(s.kind)) return {PartialRaw{t}};
  return {PartialCodeword{t}};
}

std::optional<std::uint64_t> t_of(const ProverStrategy& s) {
  if (const auto* c = std::get_if<Colluding>(&s.kind)) return c->inner ? t_of(*c->inner) : std::nullopt;
  if (const auto* p = std::get_if<PartialCodeword>(&s.kind)) return p->t;
  if (const auto* p = std::get_if<PartialRaw>(&s.kind)) return p->t;
  return std::nullopt;
}

}  // namespace

std::vector<SweepRow> sweep(const ExperimentConfig& config, const std::vector<std::uint64_t>& t_values) {
  std::vector<SweepRow> rows;
  rows.reserve(t_values.size());
  for (std::uint64_t t : t_values) {
    ExperimentConfig c = config;
    c.strategy = with_t(config.strategy, t);
    rows.push_back({t, run_experiment(c)});
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  const auto precise = [&](double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
  };
  for (const auto& row : rows) {
    if (row.t) os << *row.t;
    os << ',' << row.report.retained_bits << ',' << row.report.trials << ',' << row.report.passes << ','
       << precise(row.report.empirical_rate) << ',';
    if (row.report.analytic_rate) os << precise(*row.report.analytic_rate);
    os << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc{} && ptr == v.data() + v.size() && !v.empty(), ErrorKind::Usage,
          "config key '" + key + "' expects a non-negative integer, got '" + v + "'");
  return out;
}

std::vector<std::uint64_t> to_list(const std::string& key, const std::string& v) {
  std::vector<std::uint64_t> out;
  std::istringstream is(v);
  for (std::string item; std::getline(is, item, ',');) out.push_back(to_u64(key, trim(item)));
  require(!out.empty(), ErrorKind::Usage, "config key '" + key + "' is empty");
  return out;
}

}  // namespace

ExperimentPlan parse_experiment_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::Usage, "config line " + std::to_string(line_no) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    require(kv.emplace(key, trim(line.substr(eq + 1))).second, ErrorKind::Usage, "duplicate config key '" + key + "'");
  }
  static const std::set<std::string> known = {"kind", "k",  "epsilon", "variant", "strategy", "t",       "trials",
                                              "seed", "s",  "r",       "e",       "message",  "members", "threads"};
  for (const auto& [key, value] : kv) require(known.count(key) != 0, ErrorKind::Usage, "unknown config key '" + key + "'");
  for (const char* key : {"kind", "k", "epsilon"}) {
    require(kv.count(key) != 0, ErrorKind::Usage, std::string("config key '") + key + "' is required");
  }

  FamilyKind kind;
  if (kv["kind"] == "polynomial") {
    kind = FamilyKind::Polynomial;
  } else if (kv["kind"] == "karp-rabin") {
    kind = FamilyKind::KarpRabin;
  } else {
    fail(ErrorKind::Usage, "config kind must be polynomial or karp-rabin");
  }
  double epsilon = 0;
  {
    std::istringstream es(kv["epsilon"]);
    require(static_cast<bool>(es >> epsilon) && es.eof(), ErrorKind::Usage, "config epsilon is not a number");
  }
  ExperimentPlan plan{ExperimentConfig{derive_family(kind, to_u64("k", kv["k"]), epsilon)}, {}};
  ExperimentConfig& c = plan.config;

  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("variant")) c.variant = parse_variant(*v);
  if (const auto* v = get("s")) c.s = to_u64("s", *v);
  if (const auto* v = get("r")) c.r = to_u64("r", *v);
  if (const auto* v = get("e")) c.e = to_u64("e", *v);
  if (const auto* v = get("trials")) c.trials = to_u64("trials", *v);
  if (const auto* v = get("seed")) c.seed = to_u64("seed", *v);
  if (const auto* v = get("threads")) c.threads = static_cast<unsigned>(to_u64("threads", *v));
  if (const auto* v = get("message")) {
    if (*v == "random") {
      c.source = MessageSource::Random;
    } else if (*v == "zero") {
      c.source = MessageSource::Zero;
    } else if (*v == "random-per-trial") {
      c.source = MessageSource::RandomPerTrial;
    } else {
      fail(ErrorKind::Usage, "config message must be random, zero or random-per-trial");
    }
  }

  std::string strategy = get("strategy") ? *get("strategy") : "honest";
  if (const auto* v = get("t")) {
    plan.t_values = to_list("t", *v);
    if (strategy == "partial" || strategy == "partial-codeword" || strategy == "partial-raw") {
      strategy += ":0";
    } else {
      require(strategy.rfind("partial", 0) == 0, ErrorKind::Usage, "config t needs a partial strategy");
    }
  }
  c.strategy = parse_strategy(strategy);
  if (const auto* v = get("members")) {
    const auto members = to_list("members", *v);
    c.strategy = {Colluding{{members.begin(), members.end()}, std::make_shared<const ProverStrategy>(c.strategy)}};
  }
  return plan;
}

std::vector<SweepRow> run_plan(const ExperimentPlan& plan) {
  if (!plan.t_values.empty()) return sweep(plan.config, plan.t_values);
  return {{t_of(plan.config.strategy), run_experiment(plan.config)}};
}

}  // namespace storen
