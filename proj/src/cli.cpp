#include "charshift/cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "charshift/algorithms.hpp"
#include "charshift/error.hpp"
#include "json.hpp"

namespace charshift {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kMaxDumpDomain = 100'000;
constexpr std::uint64_t kMaxTftOrder = 4096;
constexpr double kVerifyTolerance = 1e-9;
constexpr double kGaussTolerance = 1e-6;

struct Options {
  std::uint64_t p = 0;
  std::uint64_t r = 0;
  std::uint64_t n = 0;
  std::uint64_t M = 0;
  std::string shift = "random";
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned workers = 1;
  bool timing = false;

  std::uint64_t zp = 0;
  std::uint64_t zn = 0;
  std::vector<std::uint64_t> fq;
};

// Which optional parameters were given on the command line.
struct Given {
  CLI::Option* p = nullptr;
  CLI::Option* r = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* M = nullptr;

  static bool on(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }
};

int log_level() {
  const char* raw = std::getenv("CHARSHIFT_LOG");
  if (raw == nullptr) return 0;
  const std::string v = raw;
  if (v.empty() || v == "0" || v == "off") return 0;
  if (v == "2" || v == "debug") return 2;
  return 1;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::uint64_t parse_uint(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    config_error(std::string("invalid ") + what + ": '" + text + "'");
  }
  return v;
}

bool random_shift(const Options& o) { return o.shift == "random"; }

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string format_sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + '"';
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) config_error("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// Solver commands ---------------------------------------------------------

struct Problem {
  std::string command;
  Json params;
  std::function<ShiftOracle(Rng&)> make_oracle;
  std::function<SolveReport(const ShiftOracle&, Rng&)> solve;
  std::function<bool(const ShiftOracle&, const SolveReport&)> correct;
  std::function<Json(const SolveReport&)> shift_value;
  std::function<std::optional<double>(const ShiftOracle&)> exact_probability;
};

struct TrialResult {
  Json record;
  unsigned attempts = 0;
  std::uint64_t coherent = 0;
  bool correct = false;
};

Json shift_param(const std::optional<std::uint64_t>& shift) { return shift ? Json(*shift) : Json("random"); }

Problem slsp_problem(const Options& o) {
  if (!is_prime(o.p) || o.p < 3) config_error(std::to_string(o.p) + " is not an odd prime");
  const std::uint64_t p = o.p;
  std::optional<std::uint64_t> shift;
  if (!random_shift(o)) shift = parse_uint(o.shift, "shift");
  if (shift) ShiftOracle::legendre(p, *shift);

  Problem prob;
  prob.command = "slsp";
  prob.params = {{"p", p}, {"shift", shift_param(shift)}};
  prob.make_oracle = [=](Rng& rng) { return shift ? ShiftOracle::legendre(p, *shift) : ShiftOracle::legendre(p, rng); };
  prob.solve = [=](const ShiftOracle& oracle, Rng& rng) { return solve_slsp(p, oracle, rng); };
  prob.correct = [](const ShiftOracle& oracle, const SolveReport& rep) {
    return rep.shift() == OracleSecrets::shift(oracle);
  };
  prob.shift_value = [](const SolveReport& rep) { return Json(rep.shift()); };
  prob.exact_probability = [=](const ShiftOracle& oracle) -> std::optional<double> {
    const auto dist = slsp_outcome_distribution(oracle);
    return dist[(p - OracleSecrets::shift(oracle)) % p];
  };
  return prob;
}

Problem sjsp_problem(const Options& o) {
  const FactoredOddSquarefree n = factor_trial(o.n);
  std::optional<std::uint64_t> shift;
  if (!random_shift(o)) shift = parse_uint(o.shift, "shift");
  if (shift) ShiftOracle::jacobi(n.value(), *shift);

  Problem prob;
  prob.command = "sjsp";
  prob.params = {{"n", n.value()}, {"shift", shift_param(shift)}};
  prob.make_oracle = [=](Rng& rng) {
    return shift ? ShiftOracle::jacobi(n.value(), *shift) : ShiftOracle::jacobi(n.value(), rng);
  };
  prob.solve = [=](const ShiftOracle& oracle, Rng& rng) { return solve_sjsp(n, oracle, rng); };
  prob.correct = [](const ShiftOracle& oracle, const SolveReport& rep) {
    return rep.shift() == OracleSecrets::shift(oracle);
  };
  prob.shift_value = [](const SolveReport& rep) { return Json(rep.shift()); };
  prob.exact_probability = [=](const ShiftOracle& oracle) -> std::optional<double> {
    const auto cd = sjsp_outcome_distribution(n, oracle);
    const RegisterLayout layout(std::vector<std::size_t>(n.factors().begin(), n.factors().end()));
    const std::uint64_t s = OracleSecrets::shift(oracle);
    std::vector<std::size_t> digits;
    for (std::uint64_t pj : n.factors()) digits.push_back((pj - s % pj) % pj);
    return cd.outcomes[layout.join(digits)];
  };
  return prob;
}

Problem sjsp_unknown_problem(const Options& o) {
  const std::uint64_t n = factor_trial(o.n).value();
  const std::uint64_t M = o.M;
  std::optional<std::uint64_t> shift;
  if (!random_shift(o)) shift = parse_uint(o.shift, "shift");
  ShiftOracle::jacobi_unknown(n, M, shift.value_or(0));

  Problem prob;
  prob.command = "sjsp-unknown";
  prob.params = {{"n", n}, {"M", M}, {"shift", shift_param(shift)}};
  prob.make_oracle = [=](Rng& rng) {
    return shift ? ShiftOracle::jacobi_unknown(n, M, *shift) : ShiftOracle::jacobi_unknown(n, M, rng);
  };
  prob.solve = [=](const ShiftOracle& oracle, Rng& rng) { return solve_sjsp_unknown_n(M, oracle, rng); };
  prob.correct = [](const ShiftOracle& oracle, const SolveReport& rep) {
    return rep.recovered_n == OracleSecrets::modulus(oracle) && rep.shift() == OracleSecrets::shift(oracle);
  };
  prob.shift_value = [](const SolveReport& rep) { return Json(rep.shift()); };
  prob.exact_probability = [](const ShiftOracle&) -> std::optional<double> { return std::nullopt; };
  return prob;
}

Problem sqcp_problem(const Options& o) {
  if (o.r == 0 || o.r > 32) config_error("degree r must be between 1 and 32");
  if (o.p == 2) config_error("the field needs odd characteristic");
  const FieldSpec field = FieldSpec::make(o.p, static_cast<unsigned>(o.r));
  std::optional<FieldElement> shift;
  if (!random_shift(o)) {
    const Poly coeffs = parse_coefficients(o.shift);
    if (coeffs.size() != field.degree()) config_error("field shift needs exactly r coefficients");
    shift = field.from_coeffs(coeffs);
  }

  Problem prob;
  prob.command = "sqcp";
  prob.params = {{"p", o.p}, {"r", o.r}, {"modulus", format_coefficients(field.modulus())},
                 {"shift", random_shift(o) ? Json("random") : Json(o.shift)}};
  prob.make_oracle = [=](Rng& rng) {
    return shift ? ShiftOracle::field(field, *shift) : ShiftOracle::field(field, rng);
  };
  prob.solve = [=](const ShiftOracle& oracle, Rng& rng) { return solve_sqcp(field, oracle, rng); };
  prob.correct = [](const ShiftOracle& oracle, const SolveReport& rep) {
    return rep.field_shift() == OracleSecrets::field_shift(oracle);
  };
  prob.shift_value = [](const SolveReport& rep) { return Json(format_coefficients(rep.field_shift().coeffs)); };
  prob.exact_probability = [=](const ShiftOracle& oracle) -> std::optional<double> {
    const auto cd = sqcp_outcome_distribution(oracle);
    return cd.outcomes[field.index_of(field.neg(OracleSecrets::field_shift(oracle)))];
  };
  return prob;
}

TrialResult run_trial(const Problem& prob, std::uint64_t seed, std::uint64_t trial) {
  Rng rng(seed ^ trial);
  const ShiftOracle oracle = prob.make_oracle(rng);
  const SolveReport rep = prob.solve(oracle, rng);
  TrialResult res;
  res.attempts = rep.attempts;
  res.coherent = rep.coherent_queries;
  res.correct = prob.correct(oracle, rep);
  res.record["trial"] = trial;
  res.record["recovered_s"] = prob.shift_value(rep);
  if (rep.recovered_n) res.record["recovered_n"] = *rep.recovered_n;
  res.record["attempts"] = rep.attempts;
  res.record["coherent_queries"] = rep.coherent_queries;
  res.record["classical_queries"] = rep.classical_queries;
  res.record["correct"] = res.correct;
  return res;
}

std::vector<TrialResult> run_trials(const Problem& prob, const Options& o) {
  const std::uint64_t trials = o.trials;
  std::vector<std::optional<TrialResult>> results(trials);
  std::vector<std::exception_ptr> failures(trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      try {
        results[t] = run_trial(prob, o.seed, t);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1U, static_cast<unsigned>(std::min<std::uint64_t>(o.workers, trials)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  std::vector<TrialResult> ordered;
  ordered.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (failures[t]) std::rethrow_exception(failures[t]);
    ordered.push_back(std::move(*results[t]));
  }
  return ordered;
}

void write_csv(std::ostream& os, const std::vector<TrialResult>& results, const Json& summary) {
  os << "trial,recovered_s,recovered_n,attempts,coherent_queries,classical_queries,correct\n";
  for (const auto& res : results) {
    const Json& r = res.record;
    const std::string s = r["recovered_s"].is_string() ? r["recovered_s"].get<std::string>() : r["recovered_s"].dump();
    os << r["trial"].dump() << ',' << csv_field(s) << ',' << (r.contains("recovered_n") ? r["recovered_n"].dump() : "")
       << ',' << r["attempts"].dump() << ',' << r["coherent_queries"].dump() << ','
       << r["classical_queries"].dump() << ',' << r["correct"].dump() << '\n';
  }
  os << "\nfield,value\n";
  for (const auto& [key, value] : summary.items()) {
    os << key << ',' << csv_field(value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

int run_solver(const Problem& prob, const Options& o, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<TrialResult> results = run_trials(prob, o);

  std::optional<double> exact;
  {
    Rng rng(o.seed);
    exact = prob.exact_probability(prob.make_oracle(rng));
  }
  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  std::uint64_t successes = 0;
  std::uint64_t attempts = 0;
  std::uint64_t coherent = 0;
  for (const auto& res : results) {
    successes += res.correct ? 1 : 0;
    attempts += res.attempts;
    coherent += res.coherent;
    if (log_level() >= 2) err << "charshift: trial " << res.record["trial"] << " attempts " << res.attempts << '\n';
  }

  Json summary;
  summary["command"] = prob.command;
  summary["params"] = prob.params;
  summary["trials"] = o.trials;
  summary["success_rate"] = static_cast<double>(successes) / static_cast<double>(o.trials);
  summary["mean_attempts"] = static_cast<double>(attempts) / static_cast<double>(o.trials);
  if (exact) summary["exact_attempt_probability"] = *exact;
  summary["coherent_queries_total"] = coherent;
  summary["wall_time_ms"] = o.timing ? Json(elapsed) : Json(nullptr);

  OutputSink sink(o.out, out);
  std::ostream& os = sink.get();
  if (o.format == "csv") {
    write_csv(os, results, summary);
  } else {
    for (const auto& res : results) os << res.record.dump() << '\n';
    os << summary.dump() << '\n';
  }
  if (log_level() >= 1) err << "charshift: " << prob.command << " finished " << o.trials << " trials\n";
  return kExitOk;
}

// gauss -------------------------------------------------------------------

int run_gauss(const Options& o, std::ostream& out) {
  const int chosen = (o.zp ? 1 : 0) + (o.zn ? 1 : 0) + (o.fq.empty() ? 0 : 1);
  if (chosen != 1) config_error("give exactly one of --zp, --zn, --fq");

  std::optional<GaussSumSpec> spec;
  std::uint64_t domain = 0;
  std::string label;
  if (o.zp) {
    if (o.zp < 3 || !is_prime(o.zp)) config_error(std::to_string(o.zp) + " is not an odd prime");
    spec = RingZp{o.zp};
    domain = o.zp;
    label = "Z_" + std::to_string(o.zp);
  } else if (o.zn) {
    spec = RingZn{factor_trial(o.zn)};
    domain = o.zn;
    label = "Z_" + std::to_string(o.zn);
  } else {
    if (o.fq[0] == 2) config_error("the field needs odd characteristic");
    if (o.fq[1] == 0 || o.fq[1] > 32) config_error("degree r must be between 1 and 32");
    const FieldSpec field = FieldSpec::make(o.fq[0], static_cast<unsigned>(o.fq[1]));
    domain = field.order();
    spec = FieldFq{field};
    label = "GF(" + std::to_string(o.fq[0]) + "^" + std::to_string(o.fq[1]) + ")";
  }
  if (domain > kMaxGaussDomain) throw Error(ErrorCode::DomainTooLarge, "domain above " + std::to_string(kMaxGaussDomain));

  const ExactGaussSum exact = gauss_sum_closed_form(*spec);
  const std::complex<double> brute = gauss_sum_bruteforce(*spec);
  const double delta = std::abs(exact.value() - brute);
  out << "ring: " << label << '\n'
      << "closed_form: " << exact.to_string() << '\n'
      << "value: " << format_complex(exact.value()) << '\n'
      << "bruteforce: " << format_complex(brute) << '\n'
      << "delta: " << format_sci(delta) << '\n';
  return delta < kGaussTolerance ? kExitOk : kExitViolation;
}

// verify ------------------------------------------------------------------

void print_check(std::ostream& out, const std::string& name, double value, double limit, bool ok) {
  out << name << ": " << format_sci(value) << " (limit " << format_sci(limit) << ") " << (ok ? "ok" : "VIOLATION")
      << '\n';
}

std::uint64_t resolve_shift(const Options& o, std::uint64_t modulus) {
  if (!random_shift(o)) {
    const std::uint64_t s = parse_uint(o.shift, "shift");
    if (s >= modulus) throw Error(ErrorCode::ShiftOutOfRange, "shift outside Z_" + std::to_string(modulus));
    return s;
  }
  Rng rng(o.seed);
  return uniform_below(rng, modulus);
}

int run_verify_lemma3(const Options& o, std::ostream& out) {
  const FactoredOddSquarefree n = factor_trial(o.n);
  const std::uint64_t s = resolve_shift(o, n.value());
  const double dev = verify_jacobi_qft_lemma(n, s);
  out << "n: " << n.value() << "\nshift: " << s << '\n';
  const bool ok = dev < kVerifyTolerance;
  print_check(out, "max_deviation", dev, kVerifyTolerance, ok);
  return ok ? kExitOk : kExitViolation;
}

int run_verify_tft(const Options& o, std::ostream& out) {
  if (o.p == 2) config_error("the field needs odd characteristic");
  if (o.r == 0 || o.r > 32) config_error("degree r must be between 1 and 32");
  const FieldSpec field = FieldSpec::make(o.p, static_cast<unsigned>(o.r));
  const std::uint64_t q = field.order();
  if (q > kMaxTftOrder) throw Error(ErrorCode::DomainTooLarge, "verify tft is limited to q <= 4096");
  const std::uint64_t p = field.characteristic();

  std::vector<StateVector> columns;
  columns.reserve(q);
  double matrix_delta = 0.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  for (std::uint64_t x = 0; x < q; ++x) {
    columns.push_back(trace_fourier_transform(StateVector::basis(q, x), field, Direction::Forward));
    const FieldElement fx = field.from_index(x);
    for (std::uint64_t y = 0; y < q; ++y) {
      const double angle = 2.0 * std::numbers::pi * field.trace(field.mul(fx, field.from_index(y))) / static_cast<double>(p);
      const Amplitude expected = scale * Amplitude{std::cos(angle), std::sin(angle)};
      matrix_delta = std::max(matrix_delta, std::abs(columns.back()[y] - expected));
    }
  }
  double unitarity = 0.0;
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = a; b < q; ++b) {
      Amplitude dot = 0.0;
      for (std::uint64_t y = 0; y < q; ++y) dot += std::conj(columns[a][y]) * columns[b][y];
      unitarity = std::max(unitarity, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  std::vector<bool> seen(q, false);
  bool bijective = true;
  for (std::uint64_t x = 0; x < q; ++x) {
    const auto coords = field.trace_coordinates(field.from_index(x));
    std::uint64_t idx = 0;
    for (std::size_t j = coords.size(); j-- > 0;) idx = idx * p + coords[j];
    if (seen[idx]) bijective = false;
    seen[idx] = true;
  }

  out << "field: GF(" << p << "^" << field.degree() << ") modulus " << format_coefficients(field.modulus()) << '\n';
  const bool matrix_ok = matrix_delta < kVerifyTolerance;
  const bool unitary_ok = unitarity < kVerifyTolerance;
  print_check(out, "matrix_delta", matrix_delta, kVerifyTolerance, matrix_ok);
  print_check(out, "unitarity_delta", unitarity, kVerifyTolerance, unitary_ok);
  out << "trace_coordinates_bijective: " << (bijective ? "yes" : "no") << '\n';
  return matrix_ok && unitary_ok && bijective ? kExitOk : kExitViolation;
}

int run_verify_rfcf(const Options& o, std::ostream& out) {
  const FactoredOddSquarefree n = factor_trial(o.n);
  const std::uint64_t s = resolve_shift(o, n.value());
  const DistributionComparison cmp = repeated_sampling_comparison(n, s, o.M);
  out << "n: " << cmp.n << "\nM: " << cmp.M << "\nshift: " << cmp.s << '\n';
  const bool ok = cmp.l1_distance <= cmp.bound;
  print_check(out, "l1_distance", cmp.l1_distance, cmp.bound, ok);
  return ok ? kExitOk : kExitViolation;
}

// oracle-dump -------------------------------------------------------------

int run_oracle_dump(const Options& o, const Given& given, std::ostream& out) {
  std::optional<ShiftOracle> oracle;
  Rng rng(o.seed);
  if (Given::on(given.r)) {
    if (!Given::on(given.p)) config_error("--r needs --p");
    if (o.p == 2) config_error("the field needs odd characteristic");
    if (o.r == 0 || o.r > 32) config_error("degree r must be between 1 and 32");
    const FieldSpec field = FieldSpec::make(o.p, static_cast<unsigned>(o.r));
    if (field.order() > kMaxDumpDomain) throw Error(ErrorCode::DomainTooLarge, "dump limited to 10^5 rows");
    if (random_shift(o)) {
      oracle = ShiftOracle::field(field, rng);
    } else {
      const Poly coeffs = parse_coefficients(o.shift);
      if (coeffs.size() != field.degree()) config_error("field shift needs exactly r coefficients");
      oracle = ShiftOracle::field(field, field.from_coeffs(coeffs));
    }
  } else if (Given::on(given.p)) {
    if (o.p > kMaxDumpDomain) throw Error(ErrorCode::DomainTooLarge, "dump limited to 10^5 rows");
    oracle = random_shift(o) ? ShiftOracle::legendre(o.p, rng) : ShiftOracle::legendre(o.p, parse_uint(o.shift, "shift"));
  } else if (Given::on(given.n) && Given::on(given.M)) {
    if (o.M > kMaxDumpDomain) throw Error(ErrorCode::DomainTooLarge, "dump limited to 10^5 rows");
    oracle = random_shift(o) ? ShiftOracle::jacobi_unknown(o.n, o.M, rng)
                             : ShiftOracle::jacobi_unknown(o.n, o.M, parse_uint(o.shift, "shift"));
  } else if (Given::on(given.n)) {
    if (o.n > kMaxDumpDomain) throw Error(ErrorCode::DomainTooLarge, "dump limited to 10^5 rows");
    oracle = random_shift(o) ? ShiftOracle::jacobi(o.n, rng) : ShiftOracle::jacobi(o.n, parse_uint(o.shift, "shift"));
  } else {
    config_error("oracle-dump needs --p, --p with --r, --n, or --n with --M");
  }

  OutputSink sink(o.out, out);
  std::ostream& os = sink.get();
  for (std::uint64_t x = 0; x < oracle->domain_size(); ++x) os << x << ',' << oracle->query(x) << '\n';
  return kExitOk;
}

void add_trial_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--shift", o.shift, "shift value, or 'random' (drawn per trial from the seed)");
  cmd->add_option("--trials", o.trials, "number of independent trials")->check(CLI::Range(1ULL, 10'000'000ULL));
  cmd->add_option("--seed", o.seed, "64-bit seed; trial t uses seed XOR t");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1U, 256U));
  cmd->add_flag("--timing", o.timing, "fill wall_time_ms (breaks byte-identical output)");
}

bool is_configuration_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::NotPrime:
    case ErrorCode::NotOddPrime:
    case ErrorCode::NotSquareFree:
    case ErrorCode::EvenInput:
    case ErrorCode::EvenModulus:
    case ErrorCode::EvenCharacteristic:
    case ErrorCode::ReducibleModulus:
    case ErrorCode::ShiftOutOfRange:
    case ErrorCode::ModulusTooLargeForM:
    case ErrorCode::DomainTooLarge:
    case ErrorCode::UnsupportedParameters:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  Given given;
  CLI::App app{"Shifted character problem simulator", "charshift"};
  app.require_subcommand(1);

  auto* slsp = app.add_subcommand("slsp", "shifted Legendre symbol over Z_p");
  slsp->add_option("--p", o.p, "odd prime")->required();
  add_trial_options(slsp, o);

  auto* sjsp = app.add_subcommand("sjsp", "shifted Jacobi symbol over Z_n (n known)");
  sjsp->add_option("--n", o.n, "odd square-free modulus")->required();
  add_trial_options(sjsp, o);

  auto* sjsp_unknown = app.add_subcommand("sjsp-unknown", "shifted Jacobi symbol over Z_M with n hidden");
  sjsp_unknown->add_option("--n", o.n, "hidden odd square-free modulus")->required();
  sjsp_unknown->add_option("--M", o.M, "domain size, n^2 < M")->required();
  add_trial_options(sjsp_unknown, o);

  auto* sqcp = app.add_subcommand("sqcp", "shifted quadratic character over GF(p^r)");
  sqcp->add_option("--p", o.p, "odd characteristic")->required();
  sqcp->add_option("--r", o.r, "extension degree")->required();
  add_trial_options(sqcp, o);

  auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum, closed form against brute force");
  gauss->add_option("--zp", o.zp, "odd prime p");
  gauss->add_option("--zn", o.zn, "odd square-free n");
  gauss->add_option("--fq", o.fq, "field characteristic and degree")->expected(2);

  auto* verify = app.add_subcommand("verify", "numerical identity checks");
  verify->require_subcommand(1);
  auto* lemma3 = verify->add_subcommand("lemma3", "Fourier transform of the shifted Jacobi state");
  lemma3->add_option("--n", o.n, "odd square-free modulus")->required();
  lemma3->add_option("--shift", o.shift, "shift value or 'random'");
  lemma3->add_option("--seed", o.seed, "seed for a random shift");
  auto* tft = verify->add_subcommand("tft", "trace-Fourier transform against its matrix");
  tft->add_option("--p", o.p, "odd characteristic")->required();
  tft->add_option("--r", o.r, "extension degree")->required();
  auto* rfcf = verify->add_subcommand("rfcf", "reduced-fraction vs continued-fraction distributions");
  rfcf->add_option("--n", o.n, "odd square-free modulus")->required();
  rfcf->add_option("--M", o.M, "domain size, n^2 < M <= 2^16")->required();
  rfcf->add_option("--shift", o.shift, "shift value or 'random'");
  rfcf->add_option("--seed", o.seed, "seed for a random shift");

  auto* dump = app.add_subcommand("oracle-dump", "write x,f(x) over the whole domain");
  given.p = dump->add_option("--p", o.p, "prime, or characteristic with --r");
  given.r = dump->add_option("--r", o.r, "extension degree (field variant)");
  given.n = dump->add_option("--n", o.n, "odd square-free modulus");
  given.M = dump->add_option("--M", o.M, "domain size (unknown-modulus variant)");
  dump->add_option("--shift", o.shift, "shift value or 'random'");
  dump->add_option("--seed", o.seed, "seed for a random shift");
  dump->add_option("--out", o.out, "output file (default stdout)");

  std::vector<std::string> argv_storage{"charshift"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*slsp || *sjsp || *sjsp_unknown || *sqcp) {
      const Problem prob = *slsp ? slsp_problem(o)
                           : *sjsp ? sjsp_problem(o)
                           : *sjsp_unknown ? sjsp_unknown_problem(o)
                                           : sqcp_problem(o);
      return run_solver(prob, o, out, err);
    }
    if (*gauss) return run_gauss(o, out);
    if (*lemma3) return run_verify_lemma3(o, out);
    if (*tft) return run_verify_tft(o, out);
    if (*rfcf) return run_verify_rfcf(o, out);
    return run_oracle_dump(o, given, out);
  } catch (const Error& e) {
    const bool config = is_configuration_error(e.code());
    err << "charshift: " << (config ? "configuration error: " : "error: ") << e.what() << '\n';
    return config ? kExitConfig : kExitSimulator;
  } catch (const std::exception& e) {
    err << "charshift: error: " << e.what() << '\n';
    return kExitSimulator;
  }
}

}  // namespace charshift
