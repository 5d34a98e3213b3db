#include <set>

#include "charshift/error.hpp"
#include "charshift/field.hpp"
#include "doctest.h"

using namespace charshift;

namespace {

// Reference: the set of nonzero squares by enumeration.
std::set<std::uint64_t> squares_by_enumeration(const FieldSpec& f) {
  std::set<std::uint64_t> out;
  for (std::uint64_t y = 1; y < f.order(); ++y) {
    const FieldElement e = f.from_index(y);
    out.insert(f.index_of(f.mul(e, e)));
  }
  return out;
}

// Reference trace: sum_j x^{p^j} by repeated multiplication.
std::uint64_t trace_by_powers(const FieldSpec& f, const FieldElement& x) {
  FieldElement term = x;
  FieldElement sum = f.zero();
  for (unsigned j = 0; j < f.degree(); ++j) {
    sum = f.add(sum, term);
    FieldElement next = f.one();
    for (std::uint64_t k = 0; k < f.characteristic(); ++k) next = f.mul(next, term);
    term = next;
  }
  for (unsigned j = 1; j < f.degree(); ++j) REQUIRE(sum.coeffs[j] == 0);
  return sum.coeffs[0];
}

FieldSpec gf9() { return FieldSpec::make(3, 2, Poly{1, 0, 1}); }

FieldElement el(const FieldSpec& f, Poly c) { return f.from_coeffs(c); }

}  // namespace

TEST_CASE("field construction and default moduli") {
  CHECK(FieldSpec::make(3, 1).modulus() == Poly{0, 1});
  CHECK(FieldSpec::make(3, 2).modulus() == Poly{1, 0, 1});
  CHECK(FieldSpec::make(2, 3).modulus() == Poly{1, 1, 0, 1});
  CHECK(FieldSpec::make(3, 2, Poly{1, 0, 1}).order() == 9);
  CHECK_THROWS_WITH_AS(FieldSpec::make(3, 2, Poly{2, 0, 1}), doctest::Contains("educible"), Error);
  try {
    FieldSpec::make(3, 2, Poly{2, 0, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleModulus);
  }
  try {
    FieldSpec::make(4, 2);
    FAIL("composite characteristic accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
}

TEST_CASE("GF(9) arithmetic examples") {
  const FieldSpec f = gf9();
  const FieldElement X = el(f, {0, 1});
  CHECK(f.mul(X, X) == el(f, {2, 0}));
  const FieldElement a = el(f, {1, 2});
  CHECK(f.add(a, f.zero()) == a);
  CHECK(f.div(f.one(), X) == el(f, {0, 2}));
  CHECK(f.arith(f.one(), X, ArithOp::Div) == el(f, {0, 2}));
  try {
    f.div(f.one(), f.zero());
    FAIL("division by zero accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("GF(9) trace, character and trace coordinates") {
  const FieldSpec f = gf9();
  CHECK(f.trace(f.zero()) == 0);
  CHECK(f.trace(f.one()) == 2);
  CHECK(f.trace(el(f, {0, 1})) == 0);
  CHECK(f.quadratic_character(f.zero()) == 0);
  CHECK(f.quadratic_character(f.one()) == 1);
  CHECK(f.quadratic_character(el(f, {2, 0})) == 1);
  CHECK(f.trace_coordinates(f.zero()) == std::vector<Coeff>{0, 0});
  CHECK(f.trace_coordinates(f.one()) == std::vector<Coeff>{2, 0});
  const std::vector<Coeff> coords{2, 0};
  CHECK(f.from_trace_coordinates(coords) == f.one());
}

TEST_CASE("irreducibility test") {
  CHECK(is_irreducible(3, Poly{0, 1}));
  CHECK(is_irreducible(3, Poly{1, 0, 1}));
  CHECK_FALSE(is_irreducible(3, Poly{2, 0, 1}));
  CHECK(is_irreducible(2, Poly{1, 1, 1}));
  CHECK_FALSE(is_irreducible(2, Poly{1, 0, 1}));
}

TEST_CASE("coefficient text format") {
  CHECK(parse_coefficients("1,0,1") == Poly{1, 0, 1});
  CHECK(format_coefficients(Poly{1, 0, 1}) == "1,0,1");
  CHECK_THROWS_AS(parse_coefficients("1,,2"), Error);
  CHECK_THROWS_AS(parse_coefficients("a"), Error);
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (const auto& [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 2}, {2, 3}, {3, 3}, {7, 1}}) {
    const FieldSpec f = FieldSpec::make(p, r);
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      const FieldElement x = f.from_index(a);
      CHECK(f.index_of(x) == a);
      CHECK(f.add(x, f.neg(x)) == f.zero());
      if (a != 0) CHECK(f.mul(x, f.inverse(x)) == f.one());
      for (std::uint64_t b = 0; b < f.order(); b += 3) {
        const FieldElement y = f.from_index(b);
        CHECK(f.sub(f.add(x, y), y) == x);
        if (b != 0) CHECK(f.mul(f.div(x, y), y) == x);
      }
    }
  }
}

TEST_CASE("character agrees with square enumeration and is multiplicative") {
  for (const auto& [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {3, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}, {3, 4}, {11, 2}, {5, 3}, {3, 6}}) {
    const FieldSpec f = FieldSpec::make(p, r);
    const auto squares = squares_by_enumeration(f);
    std::vector<int> chi(f.order());
    int total = 0;
    std::uint64_t plus = 0;
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      chi[a] = f.quadratic_character(f.from_index(a));
      const int expected = a == 0 ? 0 : (squares.count(a) ? 1 : -1);
      REQUIRE(chi[a] == expected);
      total += chi[a];
      plus += chi[a] == 1 ? 1 : 0;
    }
    CHECK(total == 0);
    CHECK(plus == (f.order() - 1) / 2);
    if (f.order() <= 125) {
      for (std::uint64_t a = 0; a < f.order(); ++a) {
        for (std::uint64_t b = 0; b < f.order(); ++b) {
          REQUIRE(chi[f.index_of(f.mul(f.from_index(a), f.from_index(b)))] == chi[a] * chi[b]);
        }
      }
    }
  }
}

TEST_CASE("even characteristic: arithmetic only") {
  const FieldSpec f = FieldSpec::make(2, 2);
  try {
    f.quadratic_character(f.one());
    FAIL("character on GF(4) accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenCharacteristic);
  }
  for (std::uint64_t a = 0; a < 4; ++a) CHECK(f.trace(f.from_index(a)) == trace_by_powers(f, f.from_index(a)));
}

TEST_CASE("trace matches power sums, is linear, and trace coordinates are bijective") {
  for (const auto& [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 2}, {3, 3}, {3, 4}, {7, 2}, {3, 6}}) {
    const FieldSpec f = FieldSpec::make(p, r);
    std::set<std::vector<Coeff>> images;
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      const FieldElement x = f.from_index(a);
      if (f.order() <= 81) {
        REQUIRE(f.trace(x) == trace_by_powers(f, x));
        for (std::uint64_t b = 0; b < f.order(); b += 7) {
          const FieldElement y = f.from_index(b);
          for (Coeff s = 0; s < p; ++s) {
            for (Coeff t = 0; t < p; ++t) {
              const Coeff lhs = f.trace(f.add(f.scale(x, s), f.scale(y, t)));
              REQUIRE(lhs == (s * f.trace(x) + t * f.trace(y)) % p);
            }
          }
        }
      }
      const auto coords = f.trace_coordinates(x);
      images.insert(coords);
      REQUIRE(f.from_trace_coordinates(coords) == x);
    }
    CHECK(images.size() == f.order());
  }
}
