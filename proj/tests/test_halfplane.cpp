#include <doctest.h>

#include <cmath>

#include "unitj/halfplane.hpp"

using namespace unitj;

namespace {

HPoint pt(double re, double im) { return HPoint(Real(re), Real(im)); }

UnimodularMatrix random_gamma(Rng& rng, int steps = 8) {
  UnimodularMatrix g;
  for (int i = 0; i < steps; ++i) {
    if (rng.next_unit() < 0.5)
      g = UnimodularMatrix::S() * g;
    else
      g = UnimodularMatrix::T(mpz_class(rng.next_int(-3, 3))) * g;
  }
  return g;
}

}  // namespace

TEST_SUITE("halfplane") {

TEST_CASE("apply: identity, translation, inversion") {
  HPoint t1 = HPoint::from_rational(mpq_class(3, 10), mpq_class(6, 5));
  HPoint r1 = apply(UnimodularMatrix(), t1);
  CHECK(r1.re() == t1.re());
  CHECK(r1.im() == t1.im());

  HPoint t2 = HPoint::from_rational(mpq_class(1), mpq_class(1));
  HPoint r2 = apply(UnimodularMatrix(1, -1, 0, 1), t2);
  CHECK(r2.re().is_zero());
  CHECK(r2.im() == Real(1L));

  // -1/(i/2) = 2i
  HPoint t3 = HPoint::from_rational(mpq_class(0), mpq_class(1, 2));
  HPoint r3 = apply(UnimodularMatrix::S(), t3);
  CHECK(r3.re().is_zero());
  CHECK(r3.im() == Real(2L));
}

TEST_CASE("matrix invariants") {
  CHECK_THROWS_AS(UnimodularMatrix(1, 1, 1, 1), std::invalid_argument);
  CHECK(UnimodularMatrix::S().height_z() == 1);
  CHECK(matrix_height(UnimodularMatrix()) == Real(1L));
  CHECK(matrix_height(UnimodularMatrix(1, -1, 0, 1)) == Real(1L));
  CHECK(matrix_height(UnimodularMatrix(2, 1, 1, 1)) == Real(2L));
}

TEST_CASE("reduce: fixed examples") {
  // i is already reduced
  HPoint i_pt = HPoint::from_rational(mpq_class(0), mpq_class(1));
  ReduceResult r = reduce(i_pt);
  CHECK(r.matrix.is_identity());
  CHECK(r.point.im() == Real(1L));

  // 1 + i -> i via one translation
  ReduceResult r2 = reduce(HPoint::from_rational(mpq_class(1), mpq_class(1)));
  CHECK(r2.matrix == UnimodularMatrix(1, -1, 0, 1));
  CHECK(r2.point.re().is_zero());
  CHECK(r2.point.im() == Real(1L));

  // (1+i)/2 -> i
  HPoint half = HPoint::from_rational(mpq_class(1, 2), mpq_class(1, 2));
  ReduceResult r3 = reduce(half);
  CHECK(r3.point.re().is_zero());
  CHECK(r3.point.im() == Real(1L));
  // oracle: exhaustive search over entries <= 10 finds a matrix sending
  // (1+i)/2 into the fundamental domain, landing on the same point
  bool found = false;
  for (int a = -10; a <= 10 && !found; ++a)
    for (int b = -10; b <= 10 && !found; ++b)
      for (int c = -10; c <= 10 && !found; ++c)
        for (int d = -10; d <= 10 && !found; ++d) {
          if (a * d - b * c != 1) continue;
          UnimodularMatrix g(a, b, c, d);
          HPoint q = apply(g, half);
          const QuadShadow& sh = *q.shadow();
          if (sh.x == 0 && sh.y2 == 1) found = true;
        }
  CHECK(found);
}

TEST_CASE("reduce: boundary tie-breaks") {
  // zeta^2 = -1/2 + i sqrt(3)/2 canonicalizes to zeta
  ReduceResult r = reduce(zeta2_point());
  const QuadShadow& sh = *r.point.shadow();
  CHECK(sh.x == mpq_class(1, 2));
  CHECK(sh.y2 == mpq_class(3, 4));

  // vertical edge: -1/2 + 2i prefers +1/2
  ReduceResult r2 = reduce(HPoint::from_rational(mpq_class(-1, 2), mpq_class(2)));
  CHECK(r2.point.shadow()->x == mpq_class(1, 2));

  // circle arc: point on |tau| = 1 with negative real part flips
  // x = -3/5, y = 4/5
  ReduceResult r3 = reduce(HPoint::from_rational(mpq_class(-3, 5), mpq_class(4, 5)));
  CHECK(r3.point.shadow()->x >= 0);
  mpq_class n2 = r3.point.shadow()->x * r3.point.shadow()->x + r3.point.shadow()->y2;
  CHECK(n2 >= 1);
}

TEST_CASE("reduce is idempotent and bit-for-bit") {
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    double re = rng.next_range(-20, 20);
    double im = std::exp(rng.next_range(std::log(1e-3), std::log(1e3)));
    HPoint tau = pt(re, im);
    ReduceResult r = reduce(tau);
    // bit-for-bit: apply(matrix, tau) == point
    HPoint again = apply(r.matrix, tau);
    CHECK(again.re() == r.point.re());
    CHECK(again.im() == r.point.im());
    // idempotent
    ReduceResult rr = reduce(r.point);
    CHECK(rr.matrix.is_identity());
  }
}

TEST_CASE("Im transform identity") {
  Rng rng(99);
  mpfr_prec_t p = default_precision();
  for (int k = 0; k < 1000; ++k) {
    UnimodularMatrix g = random_gamma(rng);
    HPoint tau = pt(rng.next_range(-2, 2), std::exp(rng.next_range(std::log(0.05), std::log(50.0))));
    HPoint img = apply(g, tau);
    // check at elevated precision so only apply()'s own rounding shows
    PrecisionScope hp(p + 64);
    Real c = Real(g.c()), d = Real(g.d());
    Real cre = c * Real(tau.re()) + d;
    Real cim = c * Real(tau.im());
    Real den = cre * cre + cim * cim;
    Real lhs = Real(img.im()) * den;
    CHECK(abs(lhs - tau.im()) <= ldexp(tau.im(), 1 - static_cast<long>(p)));
  }
}

TEST_CASE("dmeasure") {
  CHECK(dmeasure(pt(0, 1)) == Real(1L));
  CHECK(dmeasure(pt(2, 0.25)) == Real(4L));
  CHECK(dmeasure(pt(-3, 5)) == Real(3L));
}

TEST_CASE("check_reduction_height examples") {
  ReductionHeightReport r1 = check_reduction_height(HPoint::from_rational(mpq_class(1), mpq_class(1)));
  CHECK(r1.pass);
  CHECK(r1.height == Real(1L));
  CHECK(!r1.zeta_orbit);
  CHECK(r1.bound == Real(264L));

  ReductionHeightReport r2 = check_reduction_height(
      HPoint::from_rational(mpq_class(1, 2), mpq_class(1, 100)));
  CHECK(r2.pass);

  // zeta - 1 = zeta^2 lies in the orbit of zeta
  ReductionHeightReport r3 = check_reduction_height(zeta2_point());
  CHECK(r3.zeta_orbit);
  CHECK(r3.pass);
}

TEST_CASE("ht_rhoz sample") {
  Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    double re = rng.next_range(-10, 10);
    double im = std::exp(rng.next_range(std::log(1e-3), std::log(1e3)));
    CHECK(check_reduction_height(pt(re, im)).pass);
  }
}

TEST_CASE("classify") {
  FundamentalDomainTag t1 = classify(reduce(pt(0.1, 2.0)).point);
  CHECK(t1.region == FundamentalDomainTag::Region::interior);
  CHECK(t1.plus_half);
  FundamentalDomainTag t2 = classify(zeta_point());
  CHECK(t2.region == FundamentalDomainTag::Region::plus_boundary);
  FundamentalDomainTag t3 = classify(reduce(HPoint::from_rational(mpq_class(-1, 4), mpq_class(3))).point);
  CHECK(!t3.plus_half);
  CHECK(t3.region == FundamentalDomainTag::Region::interior);
}

TEST_CASE("precondition errors") {
  CHECK_THROWS_AS(pt(0, -1), std::invalid_argument);
  CHECK_THROWS_AS(HPoint(Real::with_prec(32), Real::with_prec(32)), std::invalid_argument);
}

TEST_CASE("fast reduction agrees with exact path") {
  Rng rng(31337);
  int used = 0;
  for (int k = 0; k < 2000; ++k) {
    mpq_class x(rng.next_int(-4000, 4000), rng.next_int(1, 50));
    mpq_class y(rng.next_int(1, 2000), rng.next_int(1, 400));
    x.canonicalize();
    y.canonicalize();
    fastred::Mat64 m;
    double xr, yr;
    if (!fastred::reduce_fast(x.get_d(), y.get_d(), m, xr, yr, 1e-9)) continue;
    ++used;
    ReduceResult ex = reduce(HPoint::from_rational(x, y));
    CHECK(ex.matrix == UnimodularMatrix(m.a, m.b, m.c, m.d));
    CHECK(std::fabs(xr - ex.point.re().to_double()) < 1e-9);
    CHECK(std::fabs(yr - ex.point.im().to_double()) < 1e-9);
  }
  CHECK(used > 1500);  // the fast path must actually cover the bulk
}

}  // TEST_SUITE
