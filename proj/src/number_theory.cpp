#include "charshift/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "charshift/error.hpp"

namespace charshift {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void require_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
  }
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw Error(ErrorCode::DivisionByZero, "value not invertible modulo " + std::to_string(mod));
  return reduce_mod(t, mod);
}

std::uint64_t reduce_mod(std::int64_t x, std::uint64_t mod) {
  const auto m = static_cast<std::int64_t>(mod);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are deterministic for every n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(std::int64_t x, std::uint64_t p) {
  require_odd_prime(p);
  const std::uint64_t a = reduce_mod(x, p);
  if (a == 0) return 0;
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int jacobi(std::int64_t x, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) {
    throw Error(ErrorCode::EvenModulus, "Jacobi symbol needs an odd positive modulus, got " + std::to_string(n));
  }
  std::uint64_t a = reduce_mod(x, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

FactoredOddSquarefree FactoredOddSquarefree::from_factors(std::vector<std::uint64_t> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::UnsupportedParameters, "factor list is empty");
  }
  std::sort(factors.begin(), factors.end());
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require_odd_prime(factors[i]);
    if (i > 0 && factors[i] == factors[i - 1]) {
      throw Error(ErrorCode::NotSquareFree, "repeated prime factor " + std::to_string(factors[i]));
    }
    n *= factors[i];
  }
  return FactoredOddSquarefree(n, std::move(factors));
}

FactoredOddSquarefree factor_trial(std::uint64_t n) {
  if (n % 2 == 0) throw Error(ErrorCode::EvenInput, std::to_string(n) + " is even");
  if (n < 3) throw Error(ErrorCode::UnsupportedParameters, "modulus must be at least 3");
  std::vector<std::uint64_t> factors;
  std::uint64_t rest = n;
  for (std::uint64_t d = 3; d * d <= rest; d += 2) {
    if (rest % d != 0) continue;
    rest /= d;
    if (rest % d == 0) {
      throw Error(ErrorCode::NotSquareFree, std::to_string(d) + "^2 divides " + std::to_string(n));
    }
    factors.push_back(d);
  }
  if (rest > 1) factors.push_back(rest);
  return FactoredOddSquarefree::from_factors(std::move(factors));
}

std::vector<std::uint64_t> crt_split(std::uint64_t x, const FactoredOddSquarefree& moduli) {
  std::vector<std::uint64_t> out;
  out.reserve(moduli.factors().size());
  for (std::uint64_t p : moduli.factors()) out.push_back(x % p);
  return out;
}

std::uint64_t crt_compose(std::span<const std::uint64_t> residues, const FactoredOddSquarefree& moduli) {
  const auto factors = moduli.factors();
  if (residues.size() != factors.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one residue per prime factor expected");
  }
  const std::uint64_t n = moduli.value();
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::uint64_t p = factors[i];
    const std::uint64_t rest = n / p;
    const std::uint64_t coeff = mul_mod(residues[i] % p, mod_inverse(rest % p, p), p);
    x = (x + mul_mod(coeff, rest, n)) % n;
  }
  return x;
}

std::uint64_t euler_phi(const FactoredOddSquarefree& moduli) {
  std::uint64_t phi = 1;
  for (std::uint64_t p : moduli.factors()) phi *= p - 1;
  return phi;
}

Fraction Fraction::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

std::string to_string(const Fraction& f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

std::vector<Fraction> convergents(std::uint64_t i, std::uint64_t M) {
  if (M == 0 || i >= M) {
    throw Error(ErrorCode::UnsupportedParameters, "convergents need 0 <= i < M");
  }
  std::vector<Fraction> out;
  // h_{k} = a_k h_{k-1} + h_{k-2}, likewise for k; seeds h_{-1}=1, h_{-2}=0.
  std::uint64_t h_prev = 1, h_prev2 = 0;
  std::uint64_t k_prev = 0, k_prev2 = 1;
  std::uint64_t a = i, b = M;
  while (b != 0) {
    const std::uint64_t term = a / b;
    const std::uint64_t h = term * h_prev + h_prev2;
    const std::uint64_t k = term * k_prev + k_prev2;
    out.push_back(Fraction{h, k});
    h_prev2 = std::exchange(h_prev, h);
    k_prev2 = std::exchange(k_prev, k);
    a = std::exchange(b, a - term * b);
  }
  return out;
}

// Unit ---------------------------------------------------------------------

Unit unit_from_i_power(std::uint64_t k) { return static_cast<Unit>(k % 4); }

Unit operator*(Unit a, Unit b) {
  return unit_from_i_power(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

Unit conj(Unit u) { return unit_from_i_power(4 - static_cast<std::uint64_t>(u)); }

std::complex<double> to_complex(Unit u) {
  switch (u) {
    case Unit::One: return {1.0, 0.0};
    case Unit::I: return {0.0, 1.0};
    case Unit::MinusOne: return {-1.0, 0.0};
    case Unit::MinusI: return {0.0, -1.0};
  }
  return {};
}

std::complex<double> ExactGaussSum::value() const {
  return to_complex(unit) * std::sqrt(static_cast<double>(radicand));
}

std::string ExactGaussSum::to_string() const {
  const std::string root = "sqrt(" + std::to_string(radicand) + ")";
  switch (unit) {
    case Unit::One: return root;
    case Unit::I: return "i*" + root;
    case Unit::MinusOne: return "-" + root;
    case Unit::MinusI: return "-i*" + root;
  }
  return root;
}

namespace {

// i^{(m-1)^2/4} for odd m: 1 when m = 1 mod 4, i when m = 3 mod 4.
Unit odd_modulus_unit(std::uint64_t m) {
  const std::uint64_t half = ((m - 1) / 2) % 4;
  return unit_from_i_power(half * half);
}

}  // namespace

ExactGaussSum gauss_sum_closed_form(const GaussSumSpec& spec) {
  return std::visit(
      [](const auto& s) -> ExactGaussSum {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RingZp>) {
          require_odd_prime(s.p);
          return {odd_modulus_unit(s.p), s.p};
        } else if constexpr (std::is_same_v<T, RingZn>) {
          return {odd_modulus_unit(s.n.value()), s.n.value()};
        } else {
          const std::uint64_t p = s.field.characteristic();
          const std::uint64_t r = s.field.degree();
          if (p == 2) {
            throw Error(ErrorCode::UnsupportedParameters, "quadratic Gauss sum needs odd characteristic");
          }
          // (-1)^{r-1} i^{r (p-1)^2 / 4}
          const std::uint64_t half = ((p - 1) / 2) % 4;
          const std::uint64_t i_power = (r % 4) * (half * half % 4) + 2 * ((r - 1) % 2);
          return {unit_from_i_power(i_power), s.field.order()};
        }
      },
      spec);
}

std::complex<double> gauss_sum_bruteforce(const GaussSumSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::complex<double> {
        using T = std::decay_t<decltype(s)>;
        std::complex<double> sum = 0.0;
        if constexpr (std::is_same_v<T, RingZp>) {
          require_odd_prime(s.p);
          if (s.p > kMaxGaussDomain) throw Error(ErrorCode::DomainTooLarge, "Z_p too large for a literal sum");
          for (std::uint64_t x = 1; x < s.p; ++x) {
            sum += static_cast<double>(legendre(static_cast<std::int64_t>(x), s.p)) * root_of_unity(x, s.p);
          }
        } else if constexpr (std::is_same_v<T, RingZn>) {
          const std::uint64_t n = s.n.value();
          if (n > kMaxGaussDomain) throw Error(ErrorCode::DomainTooLarge, "Z_n too large for a literal sum");
          for (std::uint64_t x = 1; x < n; ++x) {
            sum += static_cast<double>(jacobi(static_cast<std::int64_t>(x), n)) * root_of_unity(x, n);
          }
        } else {
          const FieldSpec& f = s.field;
          if (f.order() > kMaxGaussDomain) throw Error(ErrorCode::DomainTooLarge, "field too large for a literal sum");
          if (f.characteristic() == 2) {
            throw Error(ErrorCode::UnsupportedParameters, "quadratic Gauss sum needs odd characteristic");
          }
          for (std::uint64_t idx = 1; idx < f.order(); ++idx) {
            const FieldElement x = f.from_index(idx);
            sum += static_cast<double>(f.quadratic_character(x)) * root_of_unity(f.trace(x), f.characteristic());
          }
        }
        return sum;
      },
      spec);
}

}  // namespace charshift
