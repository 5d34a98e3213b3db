#include "charshift/algorithms.hpp"

#include <cmath>
#include <numbers>

#include "charshift/error.hpp"

namespace charshift {

std::string_view to_string(AttemptOutcome outcome) {
  switch (outcome) {
    case AttemptOutcome::CollapseRejected: return "collapse-rejected";
    case AttemptOutcome::DirectFromZero: return "direct-from-zero";
    case AttemptOutcome::WrongCandidate: return "wrong-candidate";
    case AttemptOutcome::NoValidConvergent: return "no-valid-convergent";
    case AttemptOutcome::RejectedPeriod: return "rejected-period";
    case AttemptOutcome::Verified: return "verified";
  }
  return "unknown";
}

namespace {

std::uint64_t isqrt(std::uint64_t m) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return r;
}

Amplitude root_of_unity(std::uint64_t k, std::uint64_t n, int sign = +1) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// Per-attempt bookkeeping: query deltas and the optional transcript.
class AttemptScope {
 public:
  AttemptScope(const ShiftOracle& oracle, SolveReport& report, const SolveOptions& opts)
      : oracle_(oracle),
        report_(report),
        opts_(opts),
        coherent_(oracle.coherent_query_count()),
        classical_(oracle.query_count()) {}

  void checkpoint(const std::string& label, const StateVector& state) {
    if (opts_.record_transcript && state.dim() <= kTranscriptDimLimit) {
      report_.transcript.push_back({label, state});
    }
  }

  void close(AttemptOutcome outcome) {
    AttemptRecord rec{outcome, oracle_.coherent_query_count() - coherent_, oracle_.query_count() - classical_};
    report_.attempt_log.push_back(rec);
    report_.attempts += 1;
    report_.coherent_queries += rec.coherent_queries;
    report_.classical_queries += rec.classical_queries;
  }

 private:
  const ShiftOracle& oracle_;
  SolveReport& report_;
  const SolveOptions& opts_;
  std::uint64_t coherent_;
  std::uint64_t classical_;
};

// Phase by the collapsed result register, then uncompute it with a second
// coherent query.
StateVector finish_preparation(const ShiftOracle& oracle, const StateVector& collapsed_joint) {
  StateVector phased = apply_result_phase(collapsed_joint);
  return detach_result_register(oracle.value_query(phased));
}

struct Preparation {
  std::optional<StateVector> state;  // set when the result register was nonzero
  std::size_t zero_row = 0;          // otherwise: the x that was observed with f(x) = 0
};

Preparation prepare_character_state(const ShiftOracle& oracle, std::size_t dim, Rng& rng) {
  const StateVector uniform = qft(StateVector::basis(dim, 0), Direction::Forward);
  const StateVector joint = oracle.value_query_superposed(uniform);
  auto [nonzero, collapsed] = measure_predicate(joint, result_is_nonzero, rng);
  if (!nonzero) {
    const auto [index, unused] = measure(collapsed, rng);
    return {std::nullopt, index / kResultDim};
  }
  return {finish_preparation(oracle, collapsed), 0};
}

struct ExactPreparation {
  double acceptance = 0.0;
  StateVector state;
};

ExactPreparation prepare_character_state_exact(const ShiftOracle& oracle, std::size_t dim) {
  const StateVector uniform = qft(StateVector::basis(dim, 0), Direction::Forward);
  const StateVector joint = oracle.value_query_superposed(uniform);
  Projection proj = project(joint, result_is_nonzero);
  return {proj.probability, finish_preparation(oracle, *proj.state)};
}

Amplitude legendre_phase_or_one(std::uint64_t y, std::uint64_t p) {
  const int v = legendre(static_cast<std::int64_t>(y), p);
  return v == 0 ? 1.0 : static_cast<double>(v);
}

// Algorithm 1 after state preparation: transform, Legendre phase, inverse.
StateVector legendre_fourier_stage(const StateVector& prepared, std::uint64_t p, AttemptScope* scope) {
  StateVector st = qft(prepared, Direction::Forward);
  if (scope) scope->checkpoint("fourier", st);
  st = apply_phase(st, [p](std::size_t y) { return legendre_phase_or_one(y, p); });
  return qft(st, Direction::Inverse);
}

RegisterLayout crt_layout(const FactoredOddSquarefree& n) {
  return RegisterLayout(std::vector<std::size_t>(n.factors().begin(), n.factors().end()));
}

// Inverse-CRT relabeling, then the prime-size stage on each factor register.
StateVector jacobi_fourier_stage(const StateVector& prepared, const FactoredOddSquarefree& n,
                                 const RegisterLayout& layout) {
  StateVector st = permute_basis(prepared, [&](std::size_t x) {
    const auto residues = crt_split(x, n);
    return layout.join(std::vector<std::size_t>(residues.begin(), residues.end()));
  });
  for (std::size_t j = 0; j < layout.registers(); ++j) {
    const std::uint64_t p = n.factors()[j];
    st = qft_register(st, layout, j, Direction::Forward);
    st = apply_phase(st, [&](std::size_t idx) { return legendre_phase_or_one(layout.digit(idx, j), p); });
    st = qft_register(st, layout, j, Direction::Inverse);
  }
  return st;
}

std::uint64_t decode_crt_outcome(std::size_t index, const FactoredOddSquarefree& n, const RegisterLayout& layout) {
  const auto digits = layout.split(index);
  std::vector<std::uint64_t> residues(digits.size());
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const std::uint64_t p = n.factors()[j];
    residues[j] = (p - digits[j] % p) % p;
  }
  return crt_compose(residues, n);
}

std::size_t crt_index_of_negation(std::uint64_t s, const FactoredOddSquarefree& n, const RegisterLayout& layout) {
  std::vector<std::size_t> digits;
  for (std::uint64_t p : n.factors()) digits.push_back((p - s % p) % p);
  return layout.join(digits);
}

// Algorithm 3 after state preparation. The state has q field slots plus the
// dummy slot at index q.
StateVector field_fourier_stage(const StateVector& prepared, const FieldSpec& field, AttemptScope* scope) {
  const std::size_t q = field.order();
  StateVector st = trace_fourier_transform(prepared, field, Direction::Forward);
  if (scope) scope->checkpoint("trace-fourier", st);

  // chi(0) = 0 in the main branch, so index 0 must carry no amplitude here.
  if (std::abs(st[0]) > 1e-9) {
    throw Error(ErrorCode::DomainViolation, "nonzero amplitude at y = 0 after the trace-Fourier transform");
  }
  st = apply_phase(st, [&](std::size_t y) -> Amplitude {
    if (y == 0 || y >= q) return 1.0;
    return static_cast<double>(field.quadratic_character(field.from_index(y)));
  });

  // Move the dummy amplitude onto |0> with the exact unit G(F_q)/sqrt(q).
  const Unit unit = gauss_sum_closed_form(FieldFq{field}).unit;
  st = permute_basis(st, [q](std::size_t idx) { return idx == 0 ? q : idx == q ? 0 : idx; });
  st = apply_phase(st, [&](std::size_t idx) -> Amplitude {
    if (idx == 0) return to_complex(unit);
    if (idx == q) return to_complex(conj(unit));
    return 1.0;
  });
  if (scope) scope->checkpoint("phase-corrected", st);
  return trace_fourier_transform(st, field, Direction::Inverse);
}

bool verify_integer_shift(const ShiftOracle& oracle, const FactoredOddSquarefree& n, std::uint64_t s_hat) {
  for (const auto& [x, expected] : jacobi_verification_probes(n, s_hat)) {
    if (oracle.query(x) != expected) return false;
  }
  return true;
}

// The zero of chi(x + s) is unique, so x = -s^ settles the candidate.
bool verify_field_shift(const ShiftOracle& oracle, const FieldSpec& field, const FieldElement& s_hat) {
  const FieldElement at_zero = field.neg(s_hat);
  if (oracle.query(at_zero) != 0) return false;
  return oracle.query(field.add(at_zero, field.one())) == 1;
}

[[noreturn]] void retries_exhausted(const SolveReport& report) {
  throw Error(ErrorCode::RetriesExhausted, "no verified answer after " + std::to_string(report.attempts) + " attempts");
}

SolveReport solve_sjsp_core(const FactoredOddSquarefree& n, const ShiftOracle& oracle, Rng& rng,
                            const SolveOptions& opts) {
  SolveReport report;
  report.variant = oracle.variant();
  const RegisterLayout layout = crt_layout(n);
  std::optional<std::vector<double>> last_distribution;

  while (report.attempts < opts.max_attempts) {
    AttemptScope scope(oracle, report, opts);
    Preparation prep = prepare_character_state(oracle, n.value(), rng);
    if (!prep.state) {
      scope.close(AttemptOutcome::CollapseRejected);
      continue;
    }
    scope.checkpoint("prepared", *prep.state);
    const StateVector final_state = jacobi_fourier_stage(*prep.state, n, layout);
    scope.checkpoint("final", final_state);
    last_distribution = distribution(final_state);
    const auto [index, unused] = measure(final_state, rng);
    const std::uint64_t s_hat = decode_crt_outcome(index, n, layout);
    if (verify_integer_shift(oracle, n, s_hat)) {
      scope.close(AttemptOutcome::Verified);
      report.recovered_s = s_hat;
      report.exact_success_probability = (*last_distribution)[crt_index_of_negation(s_hat, n, layout)];
      return report;
    }
    scope.close(AttemptOutcome::WrongCandidate);
  }
  retries_exhausted(report);
}

}  // namespace

SolveReport solve_slsp(std::uint64_t p, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts) {
  if (oracle.variant() != Variant::Legendre || oracle.domain_size() != p) {
    throw Error(ErrorCode::UnsupportedParameters, "solve_slsp needs a Legendre oracle over Z_" + std::to_string(p));
  }
  const auto prime = FactoredOddSquarefree::from_factors({p});
  SolveReport report;
  report.variant = Variant::Legendre;
  std::optional<std::vector<double>> last_distribution;

  while (report.attempts < opts.max_attempts) {
    AttemptScope scope(oracle, report, opts);
    Preparation prep = prepare_character_state(oracle, p, rng);
    if (!prep.state) {
      // f(x) = 0 only at x = -s.
      const std::uint64_t s_hat = (p - prep.zero_row % p) % p;
      if (verify_integer_shift(oracle, prime, s_hat)) {
        scope.close(AttemptOutcome::DirectFromZero);
        report.recovered_s = s_hat;
        if (last_distribution) report.exact_success_probability = (*last_distribution)[(p - s_hat) % p];
        return report;
      }
      scope.close(AttemptOutcome::WrongCandidate);
      continue;
    }
    scope.checkpoint("prepared", *prep.state);
    const StateVector final_state = legendre_fourier_stage(*prep.state, p, &scope);
    scope.checkpoint("final", final_state);
    last_distribution = distribution(final_state);
    const auto [index, unused] = measure(final_state, rng);
    const std::uint64_t s_hat = (p - index) % p;
    if (verify_integer_shift(oracle, prime, s_hat)) {
      scope.close(AttemptOutcome::Verified);
      report.recovered_s = s_hat;
      report.exact_success_probability = (*last_distribution)[index];
      return report;
    }
    scope.close(AttemptOutcome::WrongCandidate);
  }
  retries_exhausted(report);
}

SolveReport solve_sjsp(const FactoredOddSquarefree& n, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts) {
  if (oracle.variant() != Variant::Jacobi || oracle.domain_size() != n.value()) {
    throw Error(ErrorCode::UnsupportedParameters,
                "solve_sjsp needs a Jacobi oracle over Z_" + std::to_string(n.value()));
  }
  return solve_sjsp_core(n, oracle, rng, opts);
}

// Classical probes (x, expected f(x)) that reject every wrong candidate
// shift for a square-free modulus. For each prime p_j, probes with
// x + s^ = 0 mod p_j and x + s^ = t mod p_i (i != j), t = 1..T_j, where T_j
// exceeds the number of t values the other primes can zero out. For a
// prime modulus this is the single probe x = -s^, plus one +1 probe.
std::vector<std::pair<std::uint64_t, int>> jacobi_verification_probes(const FactoredOddSquarefree& n,
                                                                       std::uint64_t s_hat) {
  const auto factors = n.factors();
  const std::uint64_t modulus = n.value();
  std::vector<std::pair<std::uint64_t, int>> probes;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::uint64_t count = 1;
    for (;; ++count) {
      std::uint64_t blocked = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i != j) blocked += (count + factors[i] - 1) / factors[i];
      }
      if (blocked < count) break;
      if (count > 4096) throw Error(ErrorCode::UnsupportedParameters, "too many prime factors to verify");
    }
    for (std::uint64_t t = 1; t <= count; ++t) {
      std::vector<std::uint64_t> residues(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) residues[i] = i == j ? 0 : t % factors[i];
      const std::uint64_t c = crt_compose(residues, n);
      probes.emplace_back((c + modulus - s_hat) % modulus, 0);
    }
  }
  probes.emplace_back((1 + modulus - s_hat) % modulus, 1);
  return probes;
}

Fraction select_convergent(std::uint64_t i, std::uint64_t M) {
  const std::uint64_t limit = isqrt(M);
  Fraction best{0, 1};
  for (const Fraction& f : convergents(i, M)) {
    if (f.den > limit) break;
    best = f;
  }
  return best;
}

SolveReport solve_sjsp_unknown_n(std::uint64_t M, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts) {
  if (oracle.variant() != Variant::JacobiUnknown || oracle.domain_size() != M) {
    throw Error(ErrorCode::UnsupportedParameters,
                "solve_sjsp_unknown_n needs an unknown-modulus oracle over Z_" + std::to_string(M));
  }
  SolveReport report;
  report.variant = Variant::JacobiUnknown;
  bool saw_convergent = false;

  auto has_period = [&](std::uint64_t period) {
    for (unsigned k = 0; k < kPeriodicityProbes; ++k) {
      const std::uint64_t x = uniform_below(rng, M - period);
      if (oracle.query(x) != oracle.query(x + period)) return false;
    }
    return true;
  };

  while (report.attempts < opts.max_attempts) {
    AttemptScope scope(oracle, report, opts);
    Preparation prep = prepare_character_state(oracle, M, rng);
    if (!prep.state) {
      scope.close(AttemptOutcome::CollapseRejected);
      continue;
    }
    const StateVector spectrum = qft(*prep.state, Direction::Forward);
    scope.checkpoint("fourier", spectrum);
    const auto [outcome, unused] = measure(spectrum, rng);
    const Fraction frac = select_convergent(outcome, M);
    const std::uint64_t candidate = frac.den >= 3 ? frac.den : 0;
    report.candidate_denominators.push_back(candidate);
    if (candidate == 0) {
      scope.close(AttemptOutcome::NoValidConvergent);
      continue;
    }
    saw_convergent = true;
    if (candidate % 2 == 0 || !has_period(candidate)) {
      scope.close(AttemptOutcome::RejectedPeriod);
      continue;
    }

    // Any multiple of n is also a period; strip prime factors while the
    // smaller value still passes.
    std::uint64_t period = candidate;
    for (bool shrunk = true; shrunk;) {
      shrunk = false;
      for (std::uint64_t d = 3; d <= period; d += 2) {
        if (period % d != 0) continue;
        const std::uint64_t smaller = period / d;
        if (smaller >= 3 && has_period(smaller)) {
          period = smaller;
          shrunk = true;
          break;
        }
      }
    }

    std::optional<FactoredOddSquarefree> factored;
    try {
      factored = factor_trial(period);
    } catch (const Error&) {
      scope.close(AttemptOutcome::RejectedPeriod);
      continue;
    }
    scope.close(AttemptOutcome::Verified);

    SolveOptions inner = opts;
    inner.max_attempts = opts.max_attempts - std::min(report.attempts, opts.max_attempts - 1);
    try {
      SolveReport sub = solve_sjsp_core(*factored, oracle, rng, inner);
      report.recovered_s = sub.recovered_s;
      report.recovered_n = period;
      report.attempts += sub.attempts;
      report.coherent_queries += sub.coherent_queries;
      report.classical_queries += sub.classical_queries;
      report.exact_success_probability = sub.exact_success_probability;
      report.attempt_log.insert(report.attempt_log.end(), sub.attempt_log.begin(), sub.attempt_log.end());
      for (auto& cp : sub.transcript) report.transcript.push_back(std::move(cp));
      return report;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RetriesExhausted) throw;
      report.attempt_log.back().outcome = AttemptOutcome::RejectedPeriod;
    }
  }
  if (!saw_convergent) {
    throw Error(ErrorCode::NoValidConvergent, "no sampled outcome gave a denominator >= 3");
  }
  retries_exhausted(report);
}

SolveReport solve_sqcp(const FieldSpec& field, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts) {
  if (oracle.variant() != Variant::Field || !(oracle.field_spec() == field)) {
    throw Error(ErrorCode::UnsupportedParameters, "solve_sqcp needs a field oracle over the given field");
  }
  const std::size_t q = field.order();
  SolveReport report;
  report.variant = Variant::Field;
  report.recovered_s = field.zero();
  std::optional<std::vector<double>> last_distribution;

  while (report.attempts < opts.max_attempts) {
    AttemptScope scope(oracle, report, opts);
    Preparation prep = prepare_character_state(oracle, q + 1, rng);
    if (!prep.state) {
      // The dummy row always answers +1, so the zero row is the field's -s.
      const FieldElement s_hat = field.neg(field.from_index(prep.zero_row));
      if (verify_field_shift(oracle, field, s_hat)) {
        scope.close(AttemptOutcome::DirectFromZero);
        report.recovered_s = s_hat;
        if (last_distribution) report.exact_success_probability = (*last_distribution)[field.index_of(field.neg(s_hat))];
        return report;
      }
      scope.close(AttemptOutcome::WrongCandidate);
      continue;
    }
    scope.checkpoint("prepared", *prep.state);
    const StateVector final_state = field_fourier_stage(*prep.state, field, &scope);
    scope.checkpoint("final", final_state);
    last_distribution = distribution(final_state);
    const auto [index, unused] = measure(final_state, rng);
    if (index < q) {
      const FieldElement s_hat = field.neg(field.from_index(index));
      if (verify_field_shift(oracle, field, s_hat)) {
        scope.close(AttemptOutcome::Verified);
        report.recovered_s = s_hat;
        report.exact_success_probability = (*last_distribution)[index];
        return report;
      }
    }
    scope.close(AttemptOutcome::WrongCandidate);
  }
  retries_exhausted(report);
}

std::vector<double> slsp_outcome_distribution(const ShiftOracle& oracle) {
  if (oracle.variant() != Variant::Legendre) {
    throw Error(ErrorCode::UnsupportedParameters, "Legendre oracle expected");
  }
  const std::uint64_t p = oracle.domain_size();
  const ExactPreparation prep = prepare_character_state_exact(oracle, p);
  return distribution(legendre_fourier_stage(prep.state, p, nullptr));
}

CollapsedDistribution sjsp_outcome_distribution(const FactoredOddSquarefree& n, const ShiftOracle& oracle) {
  if (oracle.variant() != Variant::Jacobi || oracle.domain_size() != n.value()) {
    throw Error(ErrorCode::UnsupportedParameters, "Jacobi oracle over Z_n expected");
  }
  const ExactPreparation prep = prepare_character_state_exact(oracle, n.value());
  const RegisterLayout layout = crt_layout(n);
  return {prep.acceptance, distribution(jacobi_fourier_stage(prep.state, n, layout))};
}

CollapsedDistribution sqcp_outcome_distribution(const ShiftOracle& oracle) {
  if (oracle.variant() != Variant::Field) {
    throw Error(ErrorCode::UnsupportedParameters, "field oracle expected");
  }
  const FieldSpec& field = oracle.field_spec();
  const ExactPreparation prep = prepare_character_state_exact(oracle, field.order() + 1);
  return {prep.acceptance, distribution(field_fourier_stage(prep.state, field, nullptr))};
}

double verify_jacobi_qft_lemma(const FactoredOddSquarefree& n, std::uint64_t s) {
  const std::uint64_t m = n.value();
  std::vector<Amplitude> input(m);
  for (std::uint64_t x = 0; x < m; ++x) input[x] = static_cast<double>(jacobi(static_cast<std::int64_t>(x + s), m));
  const StateVector lhs = qft(StateVector::normalized(std::move(input)), Direction::Forward);

  const std::uint64_t half = ((m - 1) / 2) % 4;
  const Amplitude prefactor = to_complex(unit_from_i_power(half * half)) /
                              std::sqrt(static_cast<double>(euler_phi(n)));
  double worst = 0.0;
  for (std::uint64_t y = 0; y < m; ++y) {
    const Amplitude rhs = prefactor * root_of_unity(s * y % m, m, -1) *
                          static_cast<double>(jacobi(static_cast<std::int64_t>(y), m));
    worst = std::max(worst, std::abs(lhs[y] - rhs));
  }
  return worst;
}

DistributionComparison repeated_sampling_comparison(const FactoredOddSquarefree& n, std::uint64_t s, std::uint64_t M) {
  const std::uint64_t modulus = n.value();
  if (M > kMaxComparisonDomain) {
    throw Error(ErrorCode::DomainTooLarge, "exact comparison limited to M <= 2^16");
  }
  if (modulus * modulus >= M) {
    throw Error(ErrorCode::ModulusTooLargeForM, "comparison needs n^2 < M");
  }
  if (s >= modulus) throw Error(ErrorCode::ShiftOutOfRange, "shift outside Z_n");

  DistributionComparison out;
  out.n = modulus;
  out.M = M;
  out.s = s;
  out.bound = static_cast<double>(modulus) / std::sqrt(static_cast<double>(M));

  auto shifted_jacobi = [&](std::uint64_t dim) {
    std::vector<Amplitude> amps(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
      amps[x] = static_cast<double>(jacobi(static_cast<std::int64_t>((x % modulus + s) % modulus), modulus));
    }
    return StateVector::normalized(std::move(amps));
  };

  const auto rf_probs = distribution(qft(shifted_jacobi(modulus), Direction::Forward));
  for (std::uint64_t x = 0; x < modulus; ++x) out.rf_distribution[Fraction::reduced(x, modulus)] += rf_probs[x];

  const auto cf_probs = distribution(qft(shifted_jacobi(M), Direction::Forward));
  for (std::uint64_t i = 0; i < M; ++i) out.cf_distribution[select_convergent(i, M)] += cf_probs[i];

  std::map<Fraction, double> diff = out.rf_distribution;
  for (const auto& [f, prob] : out.cf_distribution) diff[f] -= prob;
  for (const auto& [f, d] : diff) out.l1_distance += std::abs(d);
  return out;
}

}  // namespace charshift
