#include <doctest.h>

#include "unitj/heights.hpp"

using namespace unitj;

TEST_SUITE("heights") {

TEST_CASE("height of rationals") {
  CHECK(abs(height(AlgebraicNumber::rational(1728)) - log(Real(1728L))) < pow2(-200));
  CHECK(height(AlgebraicNumber::rational(0)).is_zero());
  CHECK(height(AlgebraicNumber::rational(1)).is_zero());
  CHECK(height(AlgebraicNumber::rational(-1)).is_zero());
  CHECK(abs(height(AlgebraicNumber::rational(mpq_class(2, 3))) - log(Real(3L))) < pow2(-200));
}

TEST_CASE("height of quadratics") {
  // i: x^2 + 1, roots on the unit circle
  AlgebraicNumber i = AlgebraicNumber::from_minpoly(1, 0, 1);
  CHECK(height(i).is_zero());
  // i sqrt2: x^2 + 2 -> h = (1/2) log 2
  AlgebraicNumber is2 = AlgebraicNumber::from_minpoly(1, 0, 2);
  CHECK(abs(height(is2) - log(Real(2L)) / 2) < pow2(-200));
  // zeta: x^2 - x + 1 is a root of unity
  AlgebraicNumber zeta = AlgebraicNumber::from_minpoly(1, -1, 1);
  CHECK(height(zeta).is_zero());
  // golden ratio: x^2 - x - 1, Mahler measure = phi
  AlgebraicNumber phi = AlgebraicNumber::from_minpoly(1, -1, -1);
  Real expect = log((1 + sqrt(Real(5L))) / 2) / 2;
  CHECK(abs(height(phi) - expect) < pow2(-200));
}

TEST_CASE("minpoly round-trips") {
  AlgebraicNumber x = AlgebraicNumber::quadratic(mpq_class(1, 2), mpq_class(3, 4), -7);
  mpz_class A, B, C;
  x.minpoly(A, B, C);
  // x^2 - x + (1/4 + 63/16) -> 16x^2 - 16x + 67
  CHECK(A == 16);
  CHECK(B == -16);
  CHECK(C == 67);
  // square d collapses to a rational
  AlgebraicNumber r = AlgebraicNumber::quadratic(1, 2, 9);
  CHECK(r.is_rational());
  CHECK(r.rat_a() == 7);
}

TEST_CASE("h(x) = h(1/x)") {
  std::vector<AlgebraicNumber> xs = {
      AlgebraicNumber::rational(mpq_class(22, 7)),
      AlgebraicNumber::rational(mpq_class(-5, 9)),
      AlgebraicNumber::from_minpoly(3, 1, 5),
      AlgebraicNumber::from_minpoly(2, -3, 7),
      AlgebraicNumber::quadratic(mpq_class(4, 3), mpq_class(1, 6), 11),
  };
  for (const AlgebraicNumber& x : xs) {
    Real hx = height(x);
    Real hinv = height(x.inverse());
    CHECK(abs(hx - hinv) <= pow2(-240));
  }
  // exact for rationals
  CHECK(height(AlgebraicNumber::rational(mpq_class(22, 7))) ==
        height(AlgebraicNumber::rational(mpq_class(7, 22))));
}

TEST_CASE("Kronecker sanity: h = 0 only at roots of unity and zero") {
  CHECK(height(AlgebraicNumber::from_minpoly(1, 1, 1)).is_zero());   // zeta^2
  CHECK(height(AlgebraicNumber::from_minpoly(1, 0, 1)).is_zero());   // i
  CHECK(height(AlgebraicNumber::rational(0)).is_zero());
  CHECK(height(AlgebraicNumber::rational(2)) > Real(0.6));
  CHECK(height(AlgebraicNumber::from_minpoly(1, 0, 2)) > Real(0.3));
  CHECK(height(AlgebraicNumber::from_minpoly(5, 1, 1)) > Real(0.5));
}

TEST_CASE("unit height decomposition") {
  UnitDecomposition d1 = unit_height_decomposition({Real(2L), Real(0.5)}, 2);
  CHECK(abs(d1.positive_part - log(Real(2L)) / 2) < pow2(-200));
  CHECK(abs(d1.negative_part - log(Real(2L)) / 2) < pow2(-200));
  CHECK(d1.agree);

  UnitDecomposition d2 = unit_height_decomposition({Real(1L), Real(1L), Real(1L)}, 3);
  CHECK(d2.positive_part.is_zero());
  CHECK(d2.negative_part.is_zero());

  UnitDecomposition d3 =
      unit_height_decomposition({Real(3L), Real(1L), Real(1L) / 3}, 3);
  CHECK(abs(d3.positive_part - log(Real(3L)) / 3) < pow2(-200));
  CHECK(d3.agree);

  CHECK_THROWS_AS(unit_height_decomposition({Real(2L), Real(2L)}, 2), std::invalid_argument);
}

TEST_CASE("unit decomposition on synthetic conjugate sets") {
  Rng rng(606);
  for (int k = 0; k < 1000; ++k) {
    int n = static_cast<int>(rng.next_int(2, 8));
    std::vector<Real> mags;
    Real prod(1L);
    for (int i = 0; i + 1 < n; ++i) {
      Real m = exp(Real(rng.next_range(-2.0, 2.0)));
      mags.push_back(m);
      prod *= m;
    }
    mags.push_back(1L / prod);  // force a unit
    UnitDecomposition d = unit_height_decomposition(mags, n);
    CHECK(d.agree);
  }
}

TEST_CASE("height arithmetic checks") {
  // rational pair
  HeightCheckReport r1 = height_arithmetic_checks(AlgebraicNumber::rational(3),
                                                  AlgebraicNumber::rational(2));
  CHECK(!r1.skipped);
  CHECK(r1.pass);
  CHECK(r1.mult_lhs.to_double() == doctest::Approx(1.0));  // H(1) = 1
  CHECK(r1.mult_rhs.to_double() == doctest::Approx(12.0));

  // x = y: h(0) = 0 by convention
  AlgebraicNumber q = AlgebraicNumber::from_minpoly(2, -3, 7);
  HeightCheckReport r2 = height_arithmetic_checks(q, q);
  CHECK(r2.pass);
  CHECK(r2.h_diff.is_zero());

  // i and 1: i - 1 has minpoly x^2 + 2x + 2, h = (1/2) log 2
  HeightCheckReport r3 = height_arithmetic_checks(AlgebraicNumber::from_minpoly(1, 0, 1),
                                                  AlgebraicNumber::rational(1));
  CHECK(!r3.skipped);
  CHECK(abs(r3.h_diff - log(Real(2L)) / 2) < pow2(-200));
  CHECK(r3.pass);

  // incompatible fields are skipped with notice
  HeightCheckReport r4 = height_arithmetic_checks(AlgebraicNumber::from_minpoly(1, 0, 2),
                                                  AlgebraicNumber::from_minpoly(1, 0, 3));
  CHECK(r4.skipped);

  // randomized same-field sweep
  Rng rng(321);
  for (int k = 0; k < 200; ++k) {
    mpz_class d = -mpz_class(static_cast<long>(rng.next_int(2, 30)));
    AlgebraicNumber x = AlgebraicNumber::quadratic(
        mpq_class(rng.next_int(-9, 9), rng.next_int(1, 9)),
        mpq_class(rng.next_int(-9, 9), rng.next_int(1, 9)), d);
    AlgebraicNumber y = AlgebraicNumber::quadratic(
        mpq_class(rng.next_int(-9, 9), rng.next_int(1, 9)),
        mpq_class(rng.next_int(-9, 9), rng.next_int(1, 9)), d);
    HeightCheckReport rep = height_arithmetic_checks(x, y);
    CHECK(rep.pass);
  }
}

}  // TEST_SUITE
