#include "charshift/field.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "charshift/error.hpp"
#include "charshift/number_theory.hpp"

namespace charshift {

namespace {

using Wide = std::uint64_t;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo m over Z_p. m must be nonzero after trimming.
Poly poly_rem(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Wide lead_inv = mod_inverse(m.back(), p);
  while (a.size() >= m.size()) {
    const Wide factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) {
      const Wide sub = factor * m[k] % p;
      a[shift + k] = static_cast<Coeff>((a[shift + k] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<Coeff>((out[i + j] + Wide{a[i]} * b[j]) % p);
    }
  }
  trim(out);
  return out;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] = static_cast<Coeff>((a[i] + p - b[i]) % p);
  }
  trim(a);
  return a;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  Poly quot;
  const std::size_t db = b.size() - 1;
  const Wide lead_inv = mod_inverse(b.back(), p);
  if (a.size() >= b.size()) quot.assign(a.size() - db, 0);
  while (a.size() >= b.size()) {
    const Wide factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    quot[shift] = static_cast<Coeff>(factor);
    for (std::size_t k = 0; k <= db; ++k) {
      const Wide sub = factor * b[k] % p;
      a[shift + k] = static_cast<Coeff>((a[shift + k] + p - sub) % p);
    }
    trim(a);
  }
  trim(quot);
  return {std::move(quot), std::move(a)};
}

std::uint64_t checked_power(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (out > std::numeric_limits<std::uint32_t>::max() / base) {
      throw Error(ErrorCode::UnsupportedParameters, "field order exceeds 2^32");
    }
    out *= base;
  }
  return out;
}

Poly poly_from_index(std::uint64_t index, std::uint64_t p, std::size_t len) {
  Poly out(len, 0);
  for (std::size_t j = 0; j < len; ++j) {
    out[j] = static_cast<Coeff>(index % p);
    index /= p;
  }
  return out;
}

}  // namespace

bool is_irreducible(std::uint64_t p, const Poly& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2 || f.back() != 1) {
    throw Error(ErrorCode::UnsupportedParameters, "irreducibility test needs a monic polynomial of degree >= 1");
  }
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_power(p, static_cast<unsigned>(d));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly divisor = poly_from_index(idx, p, d);
      divisor.push_back(1);
      if (poly_rem(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::make(std::uint64_t p, unsigned r, std::optional<Poly> modulus) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }
  if (r == 0) {
    throw Error(ErrorCode::UnsupportedParameters, "field degree must be >= 1");
  }
  const std::uint64_t q = checked_power(p, r);
  if (modulus) {
    Poly m = *modulus;
    if (m.size() != r + 1 || m.back() != 1) {
      throw Error(ErrorCode::UnsupportedParameters, "modulus must be monic of degree " + std::to_string(r));
    }
    for (Coeff c : m) {
      if (c >= p) throw Error(ErrorCode::UnsupportedParameters, "modulus coefficient not reduced mod p");
    }
    if (!is_irreducible(p, m)) {
      throw Error(ErrorCode::ReducibleModulus, format_coefficients(m) + " factors over Z_" + std::to_string(p));
    }
    return FieldSpec(p, r, std::move(m));
  }
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    Poly candidate = poly_from_index(idx, p, r);
    candidate.push_back(1);
    if (is_irreducible(p, candidate)) return FieldSpec(p, r, std::move(candidate));
  }
  // An irreducible polynomial of every degree exists over every prime field.
  throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
}

FieldSpec::FieldSpec(std::uint64_t p, unsigned r, Poly modulus)
    : p_(p), r_(r), q_(checked_power(p, r)), modulus_(std::move(modulus)) {
  // Tr(X^k) by the direct power sum, for every k needed by T(x).
  trace_of_power_.assign(2 * r_ - 1, 0);
  FieldElement power = one();
  FieldElement x_elem = zero();
  if (r_ == 1) {
    // X reduces to -modulus[0]
    x_elem.coeffs[0] = static_cast<Coeff>((p_ - modulus_[0]) % p_);
  } else {
    x_elem.coeffs[1] = 1;
  }
  for (std::size_t k = 0; k < trace_of_power_.size(); ++k) {
    FieldElement sum = zero();
    FieldElement term = power;
    for (unsigned j = 0; j < r_; ++j) {
      sum = add(sum, term);
      term = this->pow(term, p_);
    }
    for (unsigned j = 1; j < r_; ++j) {
      if (sum.coeffs[j] != 0) {
        throw Error(ErrorCode::SingularTraceMatrix, "trace left the prime field; modulus is not irreducible");
      }
    }
    trace_of_power_[k] = sum.coeffs[0];
    power = mul(power, x_elem);
  }

  // Invert M_ij = Tr(X^{i+j}) over Z_p by Gauss-Jordan elimination.
  std::vector<std::vector<Wide>> a(r_, std::vector<Wide>(2 * r_, 0));
  for (unsigned i = 0; i < r_; ++i) {
    for (unsigned j = 0; j < r_; ++j) a[i][j] = trace_of_power_[i + j];
    a[i][r_ + i] = 1;
  }
  for (unsigned col = 0; col < r_; ++col) {
    unsigned pivot = col;
    while (pivot < r_ && a[pivot][col] == 0) ++pivot;
    if (pivot == r_) {
      throw Error(ErrorCode::SingularTraceMatrix, "trace matrix is singular");
    }
    std::swap(a[pivot], a[col]);
    const Wide inv = mod_inverse(a[col][col], p_);
    for (auto& v : a[col]) v = v * inv % p_;
    for (unsigned row = 0; row < r_; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Wide f = a[row][col];
      for (unsigned k = 0; k < 2 * r_; ++k) {
        a[row][k] = (a[row][k] + p_ - f * a[col][k] % p_) % p_;
      }
    }
  }
  trace_matrix_inverse_.assign(r_, std::vector<Coeff>(r_, 0));
  for (unsigned i = 0; i < r_; ++i) {
    for (unsigned j = 0; j < r_; ++j) trace_matrix_inverse_[i][j] = static_cast<Coeff>(a[i][r_ + j]);
  }
}

void FieldSpec::check(const FieldElement& x) const {
  if (x.coeffs.size() != r_) {
    throw Error(ErrorCode::DimensionMismatch, "field element has " + std::to_string(x.coeffs.size()) +
                                                  " coefficients, expected " + std::to_string(r_));
  }
  for (Coeff c : x.coeffs) {
    if (c >= p_) throw Error(ErrorCode::DomainViolation, "field element coefficient not reduced mod p");
  }
}

FieldElement FieldSpec::zero() const { return FieldElement{std::vector<Coeff>(r_, 0)}; }

FieldElement FieldSpec::one() const {
  FieldElement e = zero();
  e.coeffs[0] = 1;
  return e;
}

FieldElement FieldSpec::from_coeffs(std::span<const Coeff> coeffs) const {
  FieldElement e{std::vector<Coeff>(coeffs.begin(), coeffs.end())};
  check(e);
  return e;
}

FieldElement FieldSpec::from_index(std::uint64_t index) const {
  if (index >= q_) throw Error(ErrorCode::DomainViolation, "basis index outside the field");
  return FieldElement{poly_from_index(index, p_, r_)};
}

std::uint64_t FieldSpec::index_of(const FieldElement& x) const {
  check(x);
  std::uint64_t index = 0;
  for (std::size_t j = r_; j-- > 0;) index = index * p_ + x.coeffs[j];
  return index;
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = zero();
  for (unsigned j = 0; j < r_; ++j) out.coeffs[j] = static_cast<Coeff>((Wide{a.coeffs[j]} + b.coeffs[j]) % p_);
  return out;
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = zero();
  for (unsigned j = 0; j < r_; ++j) out.coeffs[j] = static_cast<Coeff>((Wide{a.coeffs[j]} + p_ - b.coeffs[j]) % p_);
  return out;
}

FieldElement FieldSpec::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldSpec::scale(const FieldElement& a, Coeff c) const {
  FieldElement out = zero();
  for (unsigned j = 0; j < r_; ++j) out.coeffs[j] = static_cast<Coeff>(Wide{a.coeffs[j]} * (c % p_) % p_);
  return out;
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
  Poly prod = poly_mul(a.coeffs, b.coeffs, p_);
  Poly rem = poly_rem(std::move(prod), modulus_, p_);
  rem.resize(r_, 0);
  return FieldElement{std::move(rem)};
}

FieldElement FieldSpec::inverse(const FieldElement& a) const {
  if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "zero has no inverse");
  // Extended Euclid: track s with s*a = r (mod modulus).
  Poly r0 = modulus_, r1 = a.coeffs;
  trim(r1);
  Poly s0, s1{1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p_);
    Poly s2 = poly_sub(s0, poly_mul(quot, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since the modulus is irreducible.
  const Wide c = mod_inverse(r0[0], p_);
  Poly inv = poly_rem(std::move(s0), modulus_, p_);
  inv.resize(r_, 0);
  for (auto& v : inv) v = static_cast<Coeff>(v * c % p_);
  return FieldElement{std::move(inv)};
}

FieldElement FieldSpec::div(const FieldElement& a, const FieldElement& b) const {
  return mul(a, inverse(b));
}

FieldElement FieldSpec::pow(const FieldElement& a, std::uint64_t e) const {
  FieldElement result = one();
  FieldElement base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

FieldElement FieldSpec::arith(const FieldElement& a, const FieldElement& b, ArithOp op) const {
  check(a);
  check(b);
  switch (op) {
    case ArithOp::Add: return add(a, b);
    case ArithOp::Sub: return sub(a, b);
    case ArithOp::Mul: return mul(a, b);
    case ArithOp::Div: return div(a, b);
  }
  return zero();
}

bool FieldSpec::is_zero(const FieldElement& a) const {
  for (Coeff c : a.coeffs) {
    if (c != 0) return false;
  }
  return true;
}

Coeff FieldSpec::trace(const FieldElement& x) const {
  Wide sum = 0;
  for (unsigned j = 0; j < r_; ++j) sum = (sum + Wide{x.coeffs[j]} * trace_of_power_[j]) % p_;
  return static_cast<Coeff>(sum);
}

int FieldSpec::quadratic_character(const FieldElement& x) const {
  if (p_ == 2) {
    throw Error(ErrorCode::EvenCharacteristic, "quadratic character needs odd characteristic");
  }
  if (is_zero(x)) return 0;
  const FieldElement e = this->pow(x, (q_ - 1) / 2);
  return e == one() ? 1 : -1;
}

std::vector<Coeff> FieldSpec::trace_coordinates(const FieldElement& x) const {
  std::vector<Coeff> out(r_, 0);
  for (unsigned i = 0; i < r_; ++i) {
    Wide sum = 0;
    for (unsigned j = 0; j < r_; ++j) sum = (sum + Wide{x.coeffs[j]} * trace_of_power_[i + j]) % p_;
    out[i] = static_cast<Coeff>(sum);
  }
  return out;
}

FieldElement FieldSpec::from_trace_coordinates(std::span<const Coeff> coords) const {
  if (coords.size() != r_) throw Error(ErrorCode::DimensionMismatch, "expected r trace coordinates");
  FieldElement out = zero();
  for (unsigned i = 0; i < r_; ++i) {
    Wide sum = 0;
    for (unsigned j = 0; j < r_; ++j) sum = (sum + Wide{trace_matrix_inverse_[i][j]} * (coords[j] % p_)) % p_;
    out.coeffs[i] = static_cast<Coeff>(sum);
  }
  return out;
}

Poly parse_coefficients(std::string_view text) {
  Poly out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    Coeff value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::ConfigError, "bad coefficient list '" + std::string(text) + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

std::string format_coefficients(std::span<const Coeff> coeffs) {
  std::ostringstream os;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j) os << ',';
    os << coeffs[j];
  }
  return os.str();
}

}  // namespace charshift
