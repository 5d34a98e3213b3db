#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "charshift/error.hpp"
#include "charshift/number_theory.hpp"
#include "doctest.h"

using namespace charshift;

namespace {

int legendre_by_squares(std::int64_t x, std::uint64_t p) {
  const std::uint64_t r = reduce_mod(x, p);
  if (r == 0) return 0;
  for (std::uint64_t y = 1; y < p; ++y) {
    if (y * y % p == r) return 1;
  }
  return -1;
}

bool prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> odd_primes_upto(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (prime_by_trial(p)) out.push_back(p);
  }
  return out;
}

// Factors by trial division when n is odd and square-free, else empty.
std::vector<std::uint64_t> squarefree_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  std::uint64_t m = n;
  for (std::uint64_t d = 3; d * d <= m; d += 2) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return {};
      f.push_back(d);
    }
  }
  if (m > 1) f.push_back(m);
  return f;
}

}  // namespace

TEST_CASE("primality") {
  for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == prime_by_trial(n));
  CHECK(is_prime(1'000'000'007ULL));
  CHECK_FALSE(is_prime(1'000'000'007ULL * 3));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("legendre examples and agreement with square enumeration") {
  CHECK(legendre(0, 7) == 0);
  CHECK(legendre(1, 13) == 1);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(-1, 7) == -1);
  for (std::uint64_t p : odd_primes_upto(101)) {
    for (std::int64_t x = -3; x < static_cast<std::int64_t>(2 * p); ++x) REQUIRE(legendre(x, p) == legendre_by_squares(x, p));
  }
  for (std::uint64_t bad : {2ULL, 9ULL, 1ULL}) {
    try {
      legendre(1, bad);
      FAIL("accepted modulus");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotOddPrime);
    }
  }
}

TEST_CASE("jacobi examples") {
  CHECK(jacobi(2, 9) == 1);
  CHECK(jacobi(3, 15) == 0);
  CHECK(jacobi(2, 15) == 1);
  try {
    jacobi(1, 10);
    FAIL("even modulus accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenModulus);
  }
}

TEST_CASE("jacobi equals the product of legendre symbols and sums to zero") {
  std::map<std::uint64_t, std::vector<int>> tables;
  auto table = [&](std::uint64_t p) -> const std::vector<int>& {
    auto it = tables.find(p);
    if (it != tables.end()) return it->second;
    std::vector<int> t(p, -1);
    t[0] = 0;
    for (std::uint64_t y = 1; y < p; ++y) t[y * y % p] = 1;
    return tables.emplace(p, std::move(t)).first->second;
  };
  for (std::uint64_t n = 3; n <= 10'000; n += 2) {
    const auto factors = squarefree_factors(n);
    if (factors.empty()) continue;
    int total = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      int product = 1;
      for (std::uint64_t p : factors) product *= table(p)[x % p];
      const int j = jacobi(static_cast<std::int64_t>(x), n);
      REQUIRE(j == product);
      total += j;
    }
    REQUIRE(total == 0);
  }
}

TEST_CASE("factorization, CRT and phi") {
  const auto f15 = factor_trial(15);
  CHECK(std::vector<std::uint64_t>(f15.factors().begin(), f15.factors().end()) == std::vector<std::uint64_t>{3, 5});
  CHECK(factor_trial(3).factors().size() == 1);
  try {
    factor_trial(9);
    FAIL("9 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquareFree);
  }
  try {
    factor_trial(10);
    FAIL("10 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenInput);
  }
  CHECK(crt_split(7, f15) == std::vector<std::uint64_t>{1, 2});
  const std::vector<std::uint64_t> res{1, 2};
  CHECK(crt_compose(res, f15) == 7);
  CHECK(crt_split(0, factor_trial(105)) == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(euler_phi(f15) == 8);
  CHECK(euler_phi(factor_trial(13)) == 12);
  CHECK(euler_phi(factor_trial(105)) == 48);

  for (std::uint64_t n = 3; n <= 10'000; n += 2) {
    const auto factors = squarefree_factors(n);
    if (factors.empty()) continue;
    const auto fn = factor_trial(n);
    REQUIRE(std::vector<std::uint64_t>(fn.factors().begin(), fn.factors().end()) == factors);
    std::uint64_t units = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      REQUIRE(crt_compose(crt_split(x, fn), fn) == x);
      units += std::gcd(x, n) == 1 ? 1 : 0;
    }
    REQUIRE(euler_phi(fn) == units);
  }
}

TEST_CASE("continued-fraction convergents") {
  CHECK(convergents(0, 16) == std::vector<Fraction>{{0, 1}});
  CHECK(convergents(68, 256) == std::vector<Fraction>{{0, 1}, {1, 3}, {1, 4}, {4, 15}, {17, 64}});
  CHECK(convergents(1, 7) == std::vector<Fraction>{{0, 1}, {1, 7}});
  CHECK(to_string(Fraction::reduced(6, 8)) == "3/4");
  for (std::uint64_t M : {97ULL, 256ULL, 1000ULL}) {
    for (std::uint64_t i = 0; i < M; ++i) {
      const auto c = convergents(i, M);
      REQUIRE(c.back() == Fraction::reduced(i, M));
      for (std::size_t k = 1; k < c.size(); ++k) {
        const auto a = static_cast<std::int64_t>(c[k - 1].num * c[k].den);
        const auto b = static_cast<std::int64_t>(c[k].num * c[k - 1].den);
        REQUIRE(std::abs(a - b) == 1);
        REQUIRE(std::gcd(c[k].num, c[k].den) == 1);
      }
    }
  }
}

TEST_CASE("Gauss sum examples") {
  CHECK(gauss_sum_closed_form(RingZp{5}).to_string() == "sqrt(5)");
  CHECK(gauss_sum_closed_form(RingZp{7}).to_string() == "i*sqrt(7)");
  CHECK(gauss_sum_closed_form(FieldFq{FieldSpec::make(3, 2)}).to_string() == "sqrt(9)");
  CHECK(gauss_sum_closed_form(RingZn{factor_trial(15)}).to_string() == "i*sqrt(15)");
  CHECK(std::abs(gauss_sum_bruteforce(RingZp{5}) - std::complex<double>(std::sqrt(5.0), 0)) < 1e-9);
  CHECK(std::abs(gauss_sum_bruteforce(RingZn{factor_trial(15)}) - std::complex<double>(0, std::sqrt(15.0))) < 1e-9);
  CHECK(std::abs(gauss_sum_bruteforce(FieldFq{FieldSpec::make(3, 2)}) - std::complex<double>(3, 0)) < 1e-9);
  CHECK(ExactGaussSum{Unit::MinusI, 27}.to_string() == "-i*sqrt(27)");
  CHECK(ExactGaussSum{Unit::MinusOne, 49}.to_string() == "-sqrt(49)");
}

TEST_CASE("Gauss sum closed forms against a literal sum") {
  auto literal = [](std::uint64_t n, const std::function<int(std::uint64_t)>& chi) {
    std::complex<double> total = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      const double angle = 2 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(n);
      total += static_cast<double>(chi(x)) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return total;
  };
  for (std::uint64_t p : odd_primes_upto(101)) {
    const auto ref = literal(p, [&](std::uint64_t x) { return legendre_by_squares(static_cast<std::int64_t>(x), p); });
    REQUIRE(std::abs(gauss_sum_closed_form(RingZp{p}).value() - ref) < 1e-6);
    REQUIRE(gauss_sum_closed_form(RingZp{p}) == gauss_sum_closed_form(FieldFq{FieldSpec::make(p, 1)}));
  }
  for (std::uint64_t n = 3; n <= 105; n += 2) {
    const auto factors = squarefree_factors(n);
    if (factors.empty()) continue;
    const auto ref = literal(n, [&](std::uint64_t x) {
      int v = 1;
      for (std::uint64_t p : factors) v *= legendre_by_squares(static_cast<std::int64_t>(x), p);
      return v;
    });
    REQUIRE(std::abs(gauss_sum_closed_form(RingZn{factor_trial(n)}).value() - ref) < 1e-6);
  }
}

TEST_CASE("unit arithmetic") {
  CHECK(unit_from_i_power(5) == Unit::I);
  CHECK(Unit::I * Unit::I == Unit::MinusOne);
  CHECK(conj(Unit::I) == Unit::MinusI);
  CHECK(std::abs(to_complex(Unit::MinusI) - std::complex<double>(0, -1)) < 1e-15);
}
