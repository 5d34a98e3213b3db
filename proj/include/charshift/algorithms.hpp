#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charshift/field.hpp"
#include "charshift/number_theory.hpp"
#include "charshift/oracle.hpp"
#include "charshift/qsim.hpp"

namespace charshift {

inline constexpr unsigned kMaxAttempts = 64;
inline constexpr unsigned kPeriodicityProbes = 20;
inline constexpr std::size_t kTranscriptDimLimit = 1U << 12U;

struct SolveOptions {
  unsigned max_attempts = kMaxAttempts;
  bool record_transcript = false;
};

enum class AttemptOutcome {
  CollapseRejected,   // result register read 0 and gave nothing usable
  DirectFromZero,     // result register read 0 and pinned the shift
  WrongCandidate,     // Fourier stage ran, classical probes rejected the answer
  NoValidConvergent,  // unknown-n sampling produced no usable denominator
  RejectedPeriod,     // unknown-n candidate failed periodicity/shape checks
  Verified,
};

std::string_view to_string(AttemptOutcome outcome);

struct AttemptRecord {
  AttemptOutcome outcome;
  std::uint64_t coherent_queries = 0;
  std::uint64_t classical_queries = 0;
};

struct Checkpoint {
  std::string label;
  StateVector state;
};

using Shift = std::variant<std::uint64_t, FieldElement>;

struct SolveReport {
  Variant variant = Variant::Legendre;
  Shift recovered_s = std::uint64_t{0};
  std::optional<std::uint64_t> recovered_n;
  unsigned attempts = 0;
  std::uint64_t coherent_queries = 0;
  std::uint64_t classical_queries = 0;
  /// Probability, read off the noiseless pre-measurement state, that one
  /// Fourier-stage attempt lands on the right answer.
  std::optional<double> exact_success_probability;
  std::vector<AttemptRecord> attempt_log;
  /// Unknown-n only: denominator picked from each sampled outcome, in order
  /// (0 when no convergent qualified).
  std::vector<std::uint64_t> candidate_denominators;
  std::vector<Checkpoint> transcript;

  std::uint64_t shift() const { return std::get<std::uint64_t>(recovered_s); }
  const FieldElement& field_shift() const { return std::get<FieldElement>(recovered_s); }
};

/// Shifted Legendre symbol: two coherent queries per Fourier-stage attempt.
SolveReport solve_slsp(std::uint64_t p, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts = {});

/// Shifted Jacobi symbol with known factorization: CRT split into
/// independent prime-size problems.
SolveReport solve_sjsp(const FactoredOddSquarefree& n, const ShiftOracle& oracle, Rng& rng,
                       const SolveOptions& opts = {});

/// Classical probes (x, expected f(x)) that accept exactly the true shift
/// of an integer-variant oracle over Z_n (n may be prime).
std::vector<std::pair<std::uint64_t, int>> jacobi_verification_probes(const FactoredOddSquarefree& n,
                                                                      std::uint64_t s_hat);

/// Shifted Jacobi symbol over Z_M with n hidden: period from continued
/// fractions, then solve_sjsp on the recovered modulus.
SolveReport solve_sjsp_unknown_n(std::uint64_t M, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts = {});

/// Shifted quadratic character over GF(q), with the dummy slot carrying the
/// Gauss-sum phase so the Fourier stage is exact.
SolveReport solve_sqcp(const FieldSpec& field, const ShiftOracle& oracle, Rng& rng, const SolveOptions& opts = {});

// Noiseless analyses ------------------------------------------------------

/// Final measurement distribution of one Fourier-stage Legendre attempt,
/// conditioned on a nonzero result register. Spends two coherent queries.
std::vector<double> slsp_outcome_distribution(const ShiftOracle& oracle);

struct CollapsedDistribution {
  double acceptance_probability = 0.0;  // P(result register nonzero)
  std::vector<double> outcomes;          // conditional final distribution
};

/// Jacobi pipeline with the collapse replaced by an exact projection.
/// Outcomes are indexed by the CRT register layout.
CollapsedDistribution sjsp_outcome_distribution(const FactoredOddSquarefree& n, const ShiftOracle& oracle);

/// Field pipeline: acceptance is the non-dummy branch probability q/(q+1);
/// outcomes are over the q+1 slots.
CollapsedDistribution sqcp_outcome_distribution(const ShiftOracle& oracle);

/// Max-norm gap between the Fourier transform of the normalized shifted
/// Jacobi state and i^{(n-1)^2/4} phi(n)^{-1/2} sum_y w_n^{-sy} (y/n) |y>.
double verify_jacobi_qft_lemma(const FactoredOddSquarefree& n, std::uint64_t s);

struct DistributionComparison {
  std::uint64_t n = 0;
  std::uint64_t M = 0;
  std::uint64_t s = 0;
  std::map<Fraction, double> rf_distribution;
  std::map<Fraction, double> cf_distribution;
  double l1_distance = 0.0;
  double bound = 0.0;  // n / sqrt(M)
};

inline constexpr std::uint64_t kMaxComparisonDomain = 1U << 16U;

DistributionComparison repeated_sampling_comparison(const FactoredOddSquarefree& n, std::uint64_t s, std::uint64_t M);

/// Largest-denominator convergent of i/M with denominator <= floor(sqrt M).
Fraction select_convergent(std::uint64_t i, std::uint64_t M);

}  // namespace charshift
