#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace charshift {

using Coeff = std::uint32_t;

/// Polynomial coefficients over Z_p, lowest degree first.
using Poly = std::vector<Coeff>;

/// An element of GF(p^r): exactly r coefficients, each reduced mod p.
/// Canonical, so equality is coefficient-wise equality.
struct FieldElement {
  std::vector<Coeff> coeffs;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// GF(p^r) modelled as Z_p[X] modulo a monic irreducible polynomial of
/// degree r. Immutable after construction.
///
/// Elements are also addressed by a basis index sum_j x_j p^j (x_0 least
/// significant); state vectors over the field use that encoding.
class FieldSpec {
 public:
  /// Without a modulus the smallest monic irreducible of degree r is used,
  /// ordering candidates by sum_j c_j p^j over the non-leading coefficients.
  static FieldSpec make(std::uint64_t p, unsigned r, std::optional<Poly> modulus = std::nullopt);

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return r_; }
  std::uint64_t order() const noexcept { return q_; }
  const Poly& modulus() const noexcept { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_coeffs(std::span<const Coeff> coeffs) const;
  FieldElement from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& x) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;
  FieldElement inverse(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, std::uint64_t e) const;
  FieldElement scale(const FieldElement& a, Coeff c) const;
  FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) const;

  bool is_zero(const FieldElement& a) const;

  /// Tr(x) = sum_j x^{p^j}, evaluated as sum_j x_j Tr(X^j).
  Coeff trace(const FieldElement& x) const;

  /// +1 on nonzero squares, -1 on non-squares, 0 at zero, via x^{(q-1)/2}.
  int quadratic_character(const FieldElement& x) const;

  /// T(x) = (Tr(x), Tr(xX), ..., Tr(xX^{r-1})).
  std::vector<Coeff> trace_coordinates(const FieldElement& x) const;
  FieldElement from_trace_coordinates(std::span<const Coeff> coords) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldSpec(std::uint64_t p, unsigned r, Poly modulus);

  void check(const FieldElement& x) const;

  std::uint64_t p_;
  unsigned r_;
  std::uint64_t q_;
  Poly modulus_;
  std::vector<Coeff> trace_of_power_;            // Tr(X^k), k < 2r - 1
  std::vector<std::vector<Coeff>> trace_matrix_inverse_;
};

/// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint64_t p, const Poly& poly);

/// "1,0,1" <-> {1,0,1}; coefficients low degree first.
Poly parse_coefficients(std::string_view text);
std::string format_coefficients(std::span<const Coeff> coeffs);

}  // namespace charshift
