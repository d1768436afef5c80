#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "storen/adversary/experiment.hpp"
#include "storen/adversary/strategy.hpp"
#include "storen/codes/certify.hpp"
#include "storen/error.hpp"
#include "storen/protocol/digest.hpp"
#include "storen/protocol/protocol.hpp"
#include "storen/transport/audit.hpp"
#include "storen/transport/service.hpp"

namespace storen::cli {

namespace fs = std::filesystem;

std::atomic<bool>& stop_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

std::size_t bytes_per_symbol(std::uint64_t q) {
  std::size_t b = 1;
  while (b < 8 && (q - 1) >> (8 * b) != 0) ++b;
  return b;
}

Message message_from_data(const HashFamily& fam, std::span<const std::uint8_t> bytes) {
  require(!bytes.empty(), ErrorKind::Usage, "data file is empty");
  if (fam.kind() == FamilyKind::KarpRabin) {
    BigNat x = BigNat::from_bytes_be(bytes);
    require(x < fam.message_space_size(), ErrorKind::Usage,
            "data does not fit the family: it must be below the product of the first k primes");
    return Message::natural(std::move(x));
  }
  const std::uint64_t q = fam.field().value();
  const std::size_t b = bytes_per_symbol(q);
  require(bytes.size() % b == 0, ErrorKind::Usage,
          "data length " + std::to_string(bytes.size()) + " is not a multiple of " + std::to_string(b) + "-byte symbols");
  require(bytes.size() / b <= fam.k(), ErrorKind::Usage,
          "data holds " + std::to_string(bytes.size() / b) + " symbols; the family takes at most k=" +
              std::to_string(fam.k()));
  std::vector<std::uint64_t> symbols(fam.k(), 0);
  for (std::size_t i = 0; i < bytes.size() / b; ++i) {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < b; ++j) v = v << 8 | bytes[i * b + j];
    require(v < q, ErrorKind::Usage, "data symbol " + std::to_string(i) + " is " + std::to_string(v) + ", not below q=" + std::to_string(q));
    symbols[i] = v;
  }
  return Message::symbols(symbols, fam.field());
}

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Io, "short write to " + path);
}

std::string hex(std::span<const std::uint8_t> bytes) {
  std::ostringstream os;
  for (auto b : bytes) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<unsigned>(b);
  return os.str();
}

std::string join(const auto& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

FamilyKind parse_kind(const std::string& s) {
  if (s == "polynomial") return FamilyKind::Polynomial;
  if (s == "karp-rabin") return FamilyKind::KarpRabin;
  fail(ErrorKind::Usage, "kind must be polynomial or karp-rabin");
}

std::string family_summary(const HashFamily& fam) {
  std::ostringstream os;
  os << "kind=" << to_string(fam.kind()) << " k=" << fam.k() << " n=" << fam.n();
  if (fam.kind() == FamilyKind::Polynomial) {
    os << " q=" << fam.field().value();
  } else if (fam.n() <= 32) {
    os << " primes=" << join(fam.primes());
  } else {
    os << " primes=2.." << fam.primes().back() << " (" << fam.n() << " primes)";
  }
  const Rational eps = fam.collision_bound();
  os << " epsilon_actual=" << eps.num << "/" << eps.den;
  return os.str();
}

// The family a variant's provers hash under: the chunk family for trivial, else fam.
HashFamily prover_family(const HashFamily& fam, ProtocolVariant variant, std::uint64_t s) {
  if (variant != ProtocolVariant::Trivial) return fam;
  require(fam.kind() == FamilyKind::Polynomial, ErrorKind::Usage, "trivial variant needs a polynomial family");
  const ChunkPlan plan(fam.k(), s);
  return HashFamily::polynomial(plan.chunk_length(), fam.n(), fam.field());
}

struct Options {
  // derive
  std::string kind;
  std::uint64_t k = 0;
  double epsilon = 0;
  // shared
  std::string descriptor, data, out, variant = "single", strategy = "honest", bind = "127.0.0.1:7000";
  std::uint64_t s = 1, r = 0, e = 0, seed = 0, prover = 1;
  // audit
  std::string digest, providers;
  std::int64_t timeout_ms = -1;
  // experiment
  std::string config;
  // certify
  std::vector<std::string> sabotage;
};

int cmd_derive(const Options& o, std::ostream& out) {
  const HashFamily fam = derive_family(parse_kind(o.kind), o.k, o.epsilon);
  if (!o.out.empty()) write_file(o.out, fam.canonical_encoding());
  out << family_summary(fam) << " fingerprint=" << hex(fam.fingerprint()) << '\n';
  return kOk;
}

int cmd_preprocess(const Options& o, std::ostream& out) {
  const HashFamily fam = HashFamily::decode(read_file(o.descriptor));
  const ProtocolVariant variant = parse_variant(o.variant);
  if (variant == ProtocolVariant::Single) require(o.s == 1, ErrorKind::Usage, "single variant takes --s 1");
  if (variant != ProtocolVariant::RsParity) require(o.r == 0 && o.e == 0, ErrorKind::Usage, "--r/--e apply to rs-parity only");
  const ChunkPlan plan(fam.k(), o.s);
  const Message x = message_from_data(fam, read_file(o.data));
  const HashFamily verify_fam = prover_family(fam, variant, o.s);

  Digest d;
  switch (variant) {
    case ProtocolVariant::Single: d = single_preprocess(fam, x, o.seed); break;
    case ProtocolVariant::Trivial: d = multi_trivial_preprocess(verify_fam, x, plan, o.seed); break;
    case ProtocolVariant::Linear: d = multi_linear_preprocess(fam, x, plan, o.seed); break;
    case ProtocolVariant::RsParity: d = multi_rs_preprocess(fam, x, plan, o.r, o.e, o.seed); break;
  }
  const auto file = encode_digest_file(d);
  write_file(o.out, file);
  const auto packed = pack_digest(d, verify_fam);
  const std::size_t log_n = ceil_log2(fam.n());
  const std::size_t log_q = ceil_log2(fam.max_modulus().value());
  out << "digest variant=" << to_string(variant) << " beta=" << d.beta << " gammas=[" << join(d.gammas) << "]\n"
      << "size file_bits=" << file.size() * 8 << " payload_bits=" << packed.bits << " formula_bits="
      << resource_bound_bits(verify_fam, d.gammas.size()) << " (ceil(log2 n) + " << d.gammas.size()
      << "*ceil(log2 q) = " << log_n << " + " << d.gammas.size() << "*" << log_q << ")"
      << " header_bits=" << kDigestHeaderBytes * 8 << '\n';
  return kOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const Digest d = decode_digest_file(read_file(o.digest));
  const HashFamily fam = HashFamily::decode(read_file(o.descriptor));
  const auto providers = parse_endpoint_list(o.providers);
  const Millis timeout = o.timeout_ms >= 0 ? Millis{o.timeout_ms} : timeout_from_env(Millis{5000});
  const HashFamily verify_fam =
      d.variant == ProtocolVariant::Trivial ? prover_family(fam, d.variant, std::max<std::size_t>(1, d.gammas.size())) : fam;
  require(d.family_fingerprint == verify_fam.fingerprint(), ErrorKind::Usage, "digest does not belong to this descriptor");

  // Digests are single-use: the sidecar marks this one spent before any prover is contacted.
  const std::string spent = o.digest + ".spent";
  require(!fs::exists(spent), ErrorKind::Usage, "digest " + o.digest + " was already used (" + spent + " exists)");
  write_file(spent, std::vector<std::uint8_t>{});

  const auto result = run_verifier_client(verify_fam, d, providers, timeout);
  const Verdict& v = result.verdict;
  out << "{\"verdict\":\"" << to_string(v.outcome) << "\",\"accused\":[" << join(v.accused) << "],\"erased\":["
      << join(v.erased) << "]}\n";
  switch (v.outcome) {
    case Outcome::Accepted: return kOk;
    case Outcome::Rejected: return kRejected;
    case Outcome::Undecidable: return kUndecidable;
  }
  return kRejected;
}

int cmd_serve(const Options& o, std::ostream& out) {
  const HashFamily fam = HashFamily::decode(read_file(o.descriptor));
  const ProtocolVariant variant = parse_variant(o.variant);
  const ProverStrategy strategy = parse_strategy(o.strategy);
  require(!std::holds_alternative<Colluding>(strategy.kind), ErrorKind::Usage, "serve runs one prover's strategy");
  const Endpoint bind = parse_endpoint(o.bind);
  const ChunkPlan plan(fam.k(), variant == ProtocolVariant::Single ? 1 : o.s);
  require(o.prover >= 1 && o.prover <= plan.provers(), ErrorKind::Usage, "--prover must lie in [1, s]");
  const Message x = message_from_data(fam, read_file(o.data));
  const HashFamily serve_fam = prover_family(fam, variant, plan.provers());

  Message held = x;
  ProverInput input = ProverInput::whole(serve_fam, held);
  if (variant == ProtocolVariant::Trivial) {
    held = chunk_of(x, plan, o.prover);
  } else if (variant != ProtocolVariant::Single) {
    held = zero_extended_chunk(x, plan, o.prover);
    input.offset = plan.offset(o.prover);
    input.length = plan.chunk_length();
  }
  const ProverStore store = ProverStore::build(strategy, input);
  ProverService service(serve_fam, store, bind, o.seed);
  out << "serving " << store.description() << " (" << store.retained_bits() << " retained bits) on " << bind.host << ":"
      << service.port() << std::endl;
  std::jthread watcher([&](std::stop_token st) {
    while (!st.stop_requested() && !stop_flag().load()) std::this_thread::sleep_for(std::chrono::milliseconds(20));
    service.stop();
  });
  service.run();
  return kOk;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  std::ifstream in(o.config);
  if (!in) fail(ErrorKind::Io, "cannot read " + o.config);
  const ExperimentPlan plan = parse_experiment_config(in);
  const auto rows = run_plan(plan);
  if (o.out.empty()) {
    write_csv(out, rows);
  } else {
    std::ofstream csv(o.out, std::ios::trunc);
    if (!csv) fail(ErrorKind::Io, "cannot write " + o.out);
    write_csv(csv, rows);
  }
  const auto& first = rows.front().report;
  out << "# " << first.config_echo << " prng=" << first.prng << '\n';
  return kOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto rows = run_certification({o.sabotage.begin(), o.sabotage.end()});
  bool all = true;
  double total = 0;
  for (const auto& row : rows) {
    out << (row.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(10) << row.name << " " << row.detail << "  ("
        << std::fixed << std::setprecision(3) << row.seconds << " s)\n";
    all = all && row.passed;
    total += row.seconds;
  }
  out << (all ? "all suites passed" : "certification FAILED") << " in " << std::fixed << std::setprecision(3) << total
      << " s\n";
  return all ? kOk : kRejected;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Protocol: return kIo;
    default: return kUsage;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"storage-enforcement audits over almost-universal hash families", "storen"};
  app.require_subcommand(1);
  Options o;

  auto* derive = app.add_subcommand("derive", "derive a hash family for k symbols and target epsilon");
  derive->add_option("--kind", o.kind, "polynomial | karp-rabin")->required();
  derive->add_option("--k", o.k, "message length (symbols or primes)")->required()->check(CLI::PositiveNumber);
  derive->add_option("--epsilon", o.epsilon, "target epsilon in (0, 1)")->required();
  derive->add_option("--out", o.out, "descriptor file to write");

  auto* pre = app.add_subcommand("preprocess", "compute a digest for a data file");
  pre->add_option("--descriptor", o.descriptor)->required();
  pre->add_option("--data", o.data)->required();
  pre->add_option("--variant", o.variant, "single | trivial | linear | rs-parity")->capture_default_str();
  pre->add_option("--s", o.s, "number of provers")->capture_default_str();
  pre->add_option("--r", o.r, "rs-parity: cheaters to identify")->capture_default_str();
  pre->add_option("--e", o.e, "rs-parity: silent provers to tolerate")->capture_default_str();
  pre->add_option("--seed", o.seed)->capture_default_str();
  pre->add_option("--out", o.out, "digest file to write")->required();

  auto* audit = app.add_subcommand("audit", "challenge provers against a digest");
  audit->add_option("--digest", o.digest)->required();
  audit->add_option("--descriptor", o.descriptor)->required();
  audit->add_option("--providers", o.providers, "host:port,... one per prover, in order")->required();
  audit->add_option("--timeout", o.timeout_ms, "per-challenge timeout in ms (default: STOREN_TIMEOUT_MS or 5000)");

  auto* serve = app.add_subcommand("serve", "run a prover service");
  serve->add_option("--descriptor", o.descriptor)->required();
  serve->add_option("--data", o.data)->required();
  serve->add_option("--strategy", o.strategy)->capture_default_str();
  serve->add_option("--bind", o.bind)->capture_default_str();
  serve->add_option("--variant", o.variant)->capture_default_str();
  serve->add_option("--s", o.s)->capture_default_str();
  serve->add_option("--prover", o.prover, "which chunk this service holds (1-based)")->capture_default_str();
  serve->add_option("--seed", o.seed, "seed for randomized strategies")->capture_default_str();

  auto* experiment = app.add_subcommand("experiment", "run an adversary experiment from a key=value file");
  experiment->add_option("--config", o.config)->required();
  experiment->add_option("--out", o.out, "CSV output (default stdout)");

  auto* certify = app.add_subcommand("certify", "run the exhaustive small-instance suites");
  certify->add_option("--sabotage", o.sabotage)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*derive) return cmd_derive(o, out);
    if (*pre) return cmd_preprocess(o, out);
    if (*audit) return cmd_audit(o, out);
    if (*serve) return cmd_serve(o, out);
    if (*experiment) return cmd_experiment(o, out);
    if (*certify) return cmd_certify(o, out);
  } catch (const Error& e) {
    err << "storen: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "storen: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace storen::cli
