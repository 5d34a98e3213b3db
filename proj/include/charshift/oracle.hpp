#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string_view>

#include "charshift/field.hpp"
#include "charshift/number_theory.hpp"
#include "charshift/qsim.hpp"

namespace charshift {

enum class Variant { Legendre, Jacobi, JacobiUnknown, Field };

std::string_view to_string(Variant v);

enum class ZeroPolicy { AsPlusOne, Reject };

/// Result-register values {0, +1, -1} are stored as {0, 1, 2} (value mod 3).
inline constexpr std::size_t kResultDim = 3;

std::size_t encode_result(int value);
int decode_result(std::size_t digit);

/// Black box for f_s(x) = character(x + s). The shift (and, for the
/// unknown-modulus variant, n) cannot be read through this interface;
/// see OracleSecrets for the audit-only accessor.
///
/// Two counters are kept: classical evaluations through query(), and
/// coherent evaluations over a whole superposition.
class ShiftOracle {
 public:
  static ShiftOracle legendre(std::uint64_t p, std::uint64_t shift);
  static ShiftOracle legendre(std::uint64_t p, Rng& rng);

  /// Throws NotSquareFree / EvenInput for an invalid n.
  static ShiftOracle jacobi(std::uint64_t n, std::uint64_t shift);
  static ShiftOracle jacobi(std::uint64_t n, Rng& rng);

  /// Domain Z_M with f(x) = ((x + s mod n)/n). Requires n^2 < M.
  static ShiftOracle jacobi_unknown(std::uint64_t n, std::uint64_t M, std::uint64_t shift);
  static ShiftOracle jacobi_unknown(std::uint64_t n, std::uint64_t M, Rng& rng);

  static ShiftOracle field(const FieldSpec& field, const FieldElement& shift);
  static ShiftOracle field(const FieldSpec& field, Rng& rng);

  ShiftOracle(const ShiftOracle& other);
  ShiftOracle& operator=(const ShiftOracle& other);

  Variant variant() const noexcept { return variant_; }

  /// p, n, M or q depending on the variant. This is the only size the
  /// unknown-modulus variant reveals.
  std::uint64_t domain_size() const noexcept { return domain_; }

  /// Field structure for the field variant (part of the problem input).
  const FieldSpec& field_spec() const;

  /// Classical evaluation. x is an integer in the domain, or a field basis
  /// index for the field variant. Throws DomainViolation.
  int query(std::uint64_t x) const;
  int query(const FieldElement& x) const;

  /// amps[x] *= f(x) for x inside the domain; indices past the domain are
  /// dummy slots and left alone.
  StateVector phase_query(const StateVector& state, ZeroPolicy policy) const;

  /// |x, r> -> |x, f(x) - r mod 3> on a joint state with layout (D, 3).
  /// Rows x >= domain are dummy slots answering +1. The map is an
  /// involution, so the same call computes and uncomputes.
  StateVector value_query(const StateVector& joint) const;

  /// Attaches a |0> result register to a domain state, then value_query.
  StateVector value_query_superposed(const StateVector& state) const;

  std::uint64_t query_count() const noexcept { return classical_.load(); }
  std::uint64_t coherent_query_count() const noexcept { return coherent_.load(); }

 private:
  friend struct OracleSecrets;

  ShiftOracle() = default;

  int evaluate(std::uint64_t x) const;

  Variant variant_ = Variant::Legendre;
  std::uint64_t domain_ = 0;
  std::uint64_t modulus_ = 0;  // p or n
  std::uint64_t shift_ = 0;    // integer shift, or basis index of the field shift
  std::optional<FieldSpec> field_;

  mutable std::atomic<std::uint64_t> classical_{0};
  mutable std::atomic<std::uint64_t> coherent_{0};
};

/// Audit-only view of an oracle's hidden parameters. Solvers never use it;
/// acceptance checks and the CLI's correctness column do.
struct OracleSecrets {
  static std::uint64_t shift(const ShiftOracle& oracle) { return oracle.shift_; }
  static FieldElement field_shift(const ShiftOracle& oracle);
  static std::uint64_t modulus(const ShiftOracle& oracle) { return oracle.modulus_; }
};

/// Domain state (dim D) -> joint state (D, 3) with the result register at 0.
StateVector attach_result_register(const StateVector& state);

/// Inverse of attach_result_register; throws DomainViolation if any
/// amplitude remains on a nonzero result value.
StateVector detach_result_register(const StateVector& joint);

/// Multiplies each |x, r> by the decoded result value (r = 0 keeps +1).
StateVector apply_result_phase(const StateVector& joint);

/// Predicate "result register holds a nonzero value".
bool result_is_nonzero(std::size_t joint_index);

}  // namespace charshift
