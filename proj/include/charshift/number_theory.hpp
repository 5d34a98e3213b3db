#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "charshift/field.hpp"

namespace charshift {

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(std::uint64_t n);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod);

// Reduce a signed integer into [0, mod).
std::uint64_t reduce_mod(std::int64_t x, std::uint64_t mod);

/// Legendre symbol (x/p) by Euler's criterion. Throws NotOddPrime.
int legendre(std::int64_t x, std::uint64_t p);

/// Jacobi symbol (x/n) by quadratic reciprocity; never factors n.
/// Throws EvenModulus for even or zero n.
int jacobi(std::int64_t x, std::uint64_t n);

/// An odd square-free integer n >= 3 together with its distinct prime
/// factors in increasing order.
class FactoredOddSquarefree {
 public:
  /// Validates the factor list (sorted on input or not) and builds n.
  static FactoredOddSquarefree from_factors(std::vector<std::uint64_t> factors);

  std::uint64_t value() const noexcept { return n_; }
  std::span<const std::uint64_t> factors() const noexcept { return factors_; }

  friend bool operator==(const FactoredOddSquarefree&, const FactoredOddSquarefree&) = default;

 private:
  FactoredOddSquarefree(std::uint64_t n, std::vector<std::uint64_t> factors)
      : n_(n), factors_(std::move(factors)) {}

  std::uint64_t n_;
  std::vector<std::uint64_t> factors_;
};

/// Trial division up to sqrt(n). Rejects even input and repeated factors.
FactoredOddSquarefree factor_trial(std::uint64_t n);

std::vector<std::uint64_t> crt_split(std::uint64_t x, const FactoredOddSquarefree& moduli);
std::uint64_t crt_compose(std::span<const std::uint64_t> residues,
                          const FactoredOddSquarefree& moduli);

std::uint64_t euler_phi(const FactoredOddSquarefree& moduli);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Builds num/den in lowest terms.
  static Fraction reduced(std::uint64_t num, std::uint64_t den);

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend auto operator<=>(const Fraction& a, const Fraction& b) {
    // cross-multiplication is exact for the desk-scale values used here
    return static_cast<unsigned __int128>(a.num) * b.den <=>
           static_cast<unsigned __int128>(b.num) * a.den;
  }
};

std::string to_string(const Fraction& f);

/// Convergents of the regular continued fraction of i/M, in order. The
/// last entry is i/M in lowest terms.
std::vector<Fraction> convergents(std::uint64_t i, std::uint64_t M);

// Quadratic Gauss sums -----------------------------------------------------

/// Powers of i, used as exact phases.
enum class Unit : std::uint8_t { One = 0, I = 1, MinusOne = 2, MinusI = 3 };

Unit unit_from_i_power(std::uint64_t k);
Unit operator*(Unit a, Unit b);
Unit conj(Unit u);
std::complex<double> to_complex(Unit u);

/// u * sqrt(radicand), kept symbolic so phase corrections stay exact.
struct ExactGaussSum {
  Unit unit = Unit::One;
  std::uint64_t radicand = 1;

  std::complex<double> value() const;
  /// Renders "sqrt(m)", "-sqrt(m)", "i*sqrt(m)" or "-i*sqrt(m)".
  std::string to_string() const;

  friend bool operator==(const ExactGaussSum&, const ExactGaussSum&) = default;
};

struct RingZp {
  std::uint64_t p;
};
struct RingZn {
  FactoredOddSquarefree n;
};
struct FieldFq {
  FieldSpec field;
};

using GaussSumSpec = std::variant<RingZp, RingZn, FieldFq>;

ExactGaussSum gauss_sum_closed_form(const GaussSumSpec& spec);

/// The literal character-weighted sum of roots of unity.
std::complex<double> gauss_sum_bruteforce(const GaussSumSpec& spec);

inline constexpr std::uint64_t kMaxGaussDomain = 1'000'000;

}  // namespace charshift
