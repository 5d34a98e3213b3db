#include <cmath>
#include <numeric>

#include "charshift/error.hpp"
#include "charshift/oracle.hpp"
#include "doctest.h"

using namespace charshift;

namespace {

int legendre_by_squares(std::uint64_t x, std::uint64_t p) {
  x %= p;
  if (x == 0) return 0;
  for (std::uint64_t y = 1; y < p; ++y) {
    if (y * y % p == x) return 1;
  }
  return -1;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("oracle construction") {
  const auto o = ShiftOracle::legendre(7, 3);
  CHECK(o.query(0) == -1);
  CHECK(o.query(4) == 0);
  const auto j = ShiftOracle::jacobi(15, 0);
  for (std::uint64_t x = 0; x < 15; ++x) CHECK(j.query(x) == jacobi(static_cast<std::int64_t>(x), 15));
  CHECK(code_of([] { ShiftOracle::jacobi_unknown(15, 224, 0); }) == ErrorCode::ModulusTooLargeForM);
  CHECK_NOTHROW(ShiftOracle::jacobi_unknown(15, 226, 0));
  CHECK(code_of([] { ShiftOracle::legendre(7, 7); }) == ErrorCode::ShiftOutOfRange);
  CHECK(code_of([] { ShiftOracle::jacobi(45, 0); }) == ErrorCode::NotSquareFree);
  CHECK(code_of([] { ShiftOracle::legendre(9, 0); }) == ErrorCode::NotOddPrime);
  CHECK(code_of([] { ShiftOracle::field(FieldSpec::make(2, 2), FieldSpec::make(2, 2).zero()); }) ==
        ErrorCode::EvenCharacteristic);
  const FieldSpec f9 = FieldSpec::make(3, 2);
  CHECK(ShiftOracle::field(f9, f9.zero()).query(f9.one()) == 1);
}

TEST_CASE("classical queries") {
  const auto u = ShiftOracle::jacobi_unknown(15, 300, 2);
  CHECK(u.domain_size() == 300);
  CHECK(u.query(1) == 0);
  CHECK(u.query(16) == 0);
  CHECK(u.query(2) == 1);
  CHECK(u.query(17) == 1);
  CHECK(u.query_count() == 4);
  CHECK(code_of([&] { u.query(300); }) == ErrorCode::DomainViolation);
  CHECK(u.query_count() == 4);
}

TEST_CASE("periodicity of the unknown-modulus oracle") {
  for (std::uint64_t n : {3ULL, 15ULL, 21ULL, 105ULL}) {
    for (std::uint64_t M : std::vector<std::uint64_t>{n * n + 1, 20'000}) {
      const auto o = ShiftOracle::jacobi_unknown(n, M, n / 2);
      for (std::uint64_t x = 0; x + n < M; ++x) REQUIRE(o.query(x) == o.query(x + n));
    }
  }
}

TEST_CASE("zero sets") {
  for (std::uint64_t p : {3ULL, 7ULL, 13ULL, 101ULL}) {
    for (std::uint64_t s = 0; s < p; s += 3) {
      const auto o = ShiftOracle::legendre(p, s);
      for (std::uint64_t x = 0; x < p; ++x) {
        REQUIRE(o.query(x) == legendre_by_squares(x + s, p));
        REQUIRE((o.query(x) == 0) == ((x + s) % p == 0));
      }
    }
  }
  for (std::uint64_t n : {15ULL, 21ULL, 105ULL}) {
    const auto o = ShiftOracle::jacobi(n, 4);
    for (std::uint64_t x = 0; x < n; ++x) REQUIRE((o.query(x) == 0) == (std::gcd((x + 4) % n, n) > 1));
  }
  const FieldSpec f = FieldSpec::make(5, 2);
  const FieldElement s = f.from_index(13);
  const auto o = ShiftOracle::field(f, s);
  for (std::uint64_t x = 0; x < f.order(); ++x) {
    REQUIRE((o.query(x) == 0) == (f.add(f.from_index(x), s) == f.zero()));
  }
}

TEST_CASE("phase queries") {
  const auto o = ShiftOracle::legendre(7, 0);
  const StateVector uniform = qft(StateVector::basis(7, 0), Direction::Forward);
  const StateVector out = o.phase_query(uniform, ZeroPolicy::AsPlusOne);
  const int expected[] = {1, 1, 1, -1, 1, -1, -1};
  for (std::size_t x = 0; x < 7; ++x) CHECK(std::abs(out[x] - expected[x] / std::sqrt(7.0)) < 1e-12);
  CHECK(o.coherent_query_count() == 1);

  const StateVector b = o.phase_query(StateVector::basis(7, 3), ZeroPolicy::AsPlusOne);
  CHECK(std::abs(b[3] + 1.0) < 1e-15);

  std::vector<Amplitude> off_zero(7, 1.0);
  off_zero[0] = 0.0;
  const StateVector psi = StateVector::normalized(off_zero);
  const StateVector a1 = o.phase_query(psi, ZeroPolicy::AsPlusOne);
  const StateVector a2 = o.phase_query(psi, ZeroPolicy::Reject);
  for (std::size_t x = 0; x < 7; ++x) CHECK(a1[x] == a2[x]);
  CHECK(code_of([&] { o.phase_query(uniform, ZeroPolicy::Reject); }) == ErrorCode::DomainViolation);
  CHECK(code_of([&] { o.phase_query(StateVector::basis(5, 0), ZeroPolicy::AsPlusOne); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("value queries") {
  const auto o = ShiftOracle::jacobi(15, 0);
  const StateVector uniform = qft(StateVector::basis(15, 0), Direction::Forward);
  const StateVector joint = o.value_query_superposed(uniform);
  CHECK(o.coherent_query_count() == 1);
  CHECK(std::abs(project(joint, result_is_nonzero).probability - 8.0 / 15.0) < 1e-12);

  for (std::uint64_t x = 0; x < 15; ++x) {
    const StateVector j = o.value_query_superposed(StateVector::basis(15, x));
    CHECK(std::abs(j[x * kResultDim + encode_result(o.query(x))] - 1.0) < 1e-15);
  }

  // Compute then uncompute restores a clean result register.
  const StateVector back = o.value_query(joint);
  const StateVector detached = detach_result_register(back);
  for (std::size_t x = 0; x < 15; ++x) CHECK(std::abs(detached[x] - uniform[x]) < 1e-12);
  CHECK(code_of([&] { detach_result_register(joint); }) == ErrorCode::DomainViolation);

  // Dummy rows answer +1.
  const auto f = ShiftOracle::legendre(5, 1);
  const StateVector dummy = f.value_query_superposed(StateVector::basis(6, 5));
  CHECK(std::abs(dummy[5 * kResultDim + 1] - 1.0) < 1e-15);
}

TEST_CASE("result register encoding") {
  CHECK(encode_result(0) == 0);
  CHECK(encode_result(1) == 1);
  CHECK(encode_result(-1) == 2);
  for (int v : {-1, 0, 1}) CHECK(decode_result(encode_result(v)) == v);
}

TEST_CASE("secrets are reachable only through the audit accessor") {
  Rng rng(3);
  const auto o = ShiftOracle::jacobi_unknown(21, 1000, rng);
  CHECK(o.domain_size() == 1000);
  CHECK(OracleSecrets::modulus(o) == 21);
  CHECK(OracleSecrets::shift(o) < 21);
}
