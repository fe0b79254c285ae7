#include <doctest.h>

#include <cmath>

#include "unitj/lattice.hpp"

using namespace unitj;

namespace {

// independent Gauss-circle oracle in pure integer arithmetic
long long gauss_circle(long long r2) {
  long long n = 0;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(r2))) + 2;
  for (long long x = -r; x <= r; ++x)
    for (long long y = -r; y <= r; ++y)
      if (x * x + y * y <= r2) ++n;
  return n;
}

Ellipse unit_circle() { return Ellipse(Real(1L), Real(0L), Real(1L)); }

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("ellipse constructor validates") {
  CHECK_THROWS_AS(Ellipse(Real(-1L), Real(0L), Real(1L)), std::invalid_argument);
  CHECK_THROWS_AS(Ellipse(Real(1L), Real(3L), Real(1L)), std::invalid_argument);
}

TEST_CASE("area: fixed examples") {
  CHECK(abs(ellipse_area(unit_circle()) - const_pi()) < pow2(-200));
  Ellipse e2(Real(1L), Real(0L), Real(4L));
  CHECK(abs(ellipse_area(e2) - const_pi() / 2) < pow2(-200));
  Ellipse e3(Real(1L), Real(1L), Real(1L));
  CHECK(abs(ellipse_area(e3) - 2 * const_pi() / const_sqrt3()) < pow2(-200));
}

TEST_CASE("circumference bound: tight for the circle, majorant otherwise") {
  // circle: bound = 2 pi = true perimeter
  Real cb = circumference_bound(unit_circle());
  CHECK(abs(cb - 2 * const_pi()) < pow2(-200));
  CHECK(perimeter_numeric(unit_circle()).to_double() == doctest::Approx(2 * M_PI).epsilon(1e-12));

  // axis-aligned 1:2 ellipse: bound ~ 4.967 vs true ~ 4.844
  Ellipse e2(Real(1L), Real(0L), Real(4L));
  Real p2 = perimeter_numeric(e2);
  CHECK(p2.to_double() == doctest::Approx(4.84422).epsilon(1e-4));
  CHECK(circumference_bound(e2).to_double() == doctest::Approx(4.96729).epsilon(1e-4));
  CHECK(circumference_bound(e2) >= p2);

  // skew form a^2 + ac + c^2
  Ellipse e3(Real(1L), Real(1L), Real(1L));
  CHECK(circumference_bound(e3) >= perimeter_numeric(e3));
}

TEST_CASE("lattice_count matches the Gauss-circle oracle") {
  CHECK(lattice_count(unit_circle(), Real(100L)) == 317);
  CHECK(lattice_count(unit_circle(), Real(100L)) == gauss_circle(100));
  CHECK(lattice_count(unit_circle(), Real(1L)) == 5);
  for (long long r2 : {2, 5, 10, 25, 50, 400, 10000})
    CHECK(lattice_count(unit_circle(), Real(static_cast<long>(r2))) == gauss_circle(r2));
  // scale -> 0+ keeps only the origin
  CHECK(lattice_count(unit_circle(), Real(1e-9)) == 1);
  CHECK_THROWS_AS(lattice_count(unit_circle(), Real(1e12)), std::overflow_error);
}

TEST_CASE("davenport: fixed examples") {
  DavenportReport r10 = davenport_check(unit_circle(), Real(100L));
  CHECK(r10.count == 317);
  CHECK(r10.lhs.to_double() == doctest::Approx(317 - 100 * M_PI).epsilon(1e-9));
  CHECK(r10.rhs.to_double() == doctest::Approx(4 * (2 * M_PI * 10 + 1)).epsilon(1e-9));
  CHECK(r10.pass);

  DavenportReport r1 = davenport_check(unit_circle(), Real(1L));
  CHECK(r1.count == 5);
  CHECK(r1.pass);

  // near-degenerate sliver
  DavenportReport rs = davenport_check(Ellipse(Real(10000L), Real(0L), Real(1e-4)), Real(1L));
  CHECK(rs.pass);
}

TEST_CASE("davenport: randomized ellipses") {
  Rng rng(404);
  for (int k = 0; k < 100; ++k) {
    double A = rng.next_range(0.1, 3.0);
    double C = rng.next_range(0.1, 3.0);
    double B = rng.next_range(-0.95, 0.95) * 2 * std::sqrt(A * C);
    double s = rng.next_range(0.5, 2000.0);
    DavenportReport rep = davenport_check(Ellipse(Real(A), Real(B), Real(C)), Real(s));
    CHECK(rep.pass);
    CHECK(circumference_bound(Ellipse(Real(A / s), Real(B / s), Real(C / s))) >= rep.perimeter);
  }
}

TEST_CASE("annulus pairs: fixed examples") {
  HPoint zeta = zeta_point();
  // y = Im zeta: lambda(1,0) = 1 = Im(xi)/y exactly, so (+-1, 0) are in
  AnnulusSpec spec{zeta, const_sqrt3() / 2, Real(1e-9), 1};
  auto pairs = annulus_pairs(spec);
  bool has_plus = false, has_minus = false;
  for (auto& [a, c] : pairs) {
    if (a == 1 && c == 0) has_plus = true;
    if (a == -1 && c == 0) has_minus = true;
  }
  CHECK(has_plus);
  CHECK(has_minus);

  // y = 2 Im zeta: no integer pair attains lambda = 1/2 within a tiny band
  AnnulusSpec spec2{zeta, const_sqrt3(), Real(1e-12), 1};
  CHECK(annulus_pairs(spec2).empty());

  CHECK_THROWS_AS(annulus_pairs(AnnulusSpec{zeta, const_sqrt3(), Real(1L), 1}),
                  std::invalid_argument);
}

TEST_CASE("annulus count bound majorizes enumeration") {
  HPoint zeta = zeta_point();
  Rng rng(777);
  for (int k = 0; k < 60; ++k) {
    double y = rng.next_range(0.87, 10.0);
    double cap = std::pow(std::sqrt(3.0) / 2 / 100.0, 2);
    double eps = rng.next_range(0.0, cap * 0.999);
    for (int nu : {1, -1}) {
      AnnulusSpec spec{zeta, Real(y), Real(eps), nu};
      auto pairs = annulus_pairs(spec);
      Real bound = annulus_count_bound(spec);
      CHECK(Real(static_cast<long>(pairs.size())) <= bound);
    }
  }
  // eps -> 0 limit: 32 pi (sqrt(2 Im xi) + sqrt y)/sqrt y
  AnnulusSpec z{zeta, Real(1L), Real(0L), 1};
  Real expect = 32 * const_pi() * (sqrt(const_sqrt3()) + 1);
  CHECK(abs(annulus_count_bound(z) - expect) < pow2(-180));
}

TEST_CASE("matrix count bound: limiting forms") {
  HPoint zeta = zeta_point();
  Real b0 = matrix_count_bound(zeta, Real(0L), Real(1L), Real(0L));
  // x = 0: factor 13|xi| only
  Real expect = 32 * const_pi() * (sqrt(const_sqrt3()) + 1) * 13;
  CHECK(abs(b0 - expect) < pow2(-180));
  Real b1 = matrix_count_bound(zeta, Real(mpq_class(1, 2)), sqrt(Real(3L)) / 2, Real(1e-6));
  CHECK(b1.sgn() > 0);
}

TEST_CASE("matrix count brute force vs bound") {
  HPoint zeta = zeta_point();
  // the segment through zeta itself: identity is found
  long long c1 = matrix_count_bruteforce(zeta, Real(mpq_class(1, 2)), const_sqrt3() / 2,
                                         Real(1e-6), 64);
  CHECK(c1 >= 1);
  Real bound = matrix_count_bound(zeta, Real(mpq_class(1, 2)), const_sqrt3() / 2, Real(1e-6));
  CHECK(Real(static_cast<long>(c1)) <= bound);

  // sparse line high above the domain: no matrix reaches zeta
  long long c0 = matrix_count_bruteforce(zeta, Real(mpq_class(1, 2)), Real(50L), Real(1e-6), 64);
  CHECK(c0 == 0);

  // xi = i from the y = 1/2 line: (1,-1;1,0) sends 1/2 + i/2 to i exactly
  HPoint ip = HPoint::from_rational(mpq_class(0), mpq_class(1));
  long long ci = matrix_count_bruteforce(ip, Real(mpq_class(1, 2)), Real(mpq_class(1, 2)),
                                         Real(9e-5), 64);
  CHECK(ci >= 1);
  CHECK(Real(static_cast<long>(ci)) <=
        matrix_count_bound(ip, Real(mpq_class(1, 2)), Real(mpq_class(1, 2)), Real(9e-5)));

  CHECK_THROWS_AS(matrix_count_bruteforce(zeta, Real(0L), Real(mpq_class(1, 100)), Real(1e-6), 2),
                  std::invalid_argument);
}

TEST_CASE("ellipse lemma check: fixed examples") {
  HPoint zeta = zeta_point();
  // interior point right next to zeta, identity matrix
  HPoint tau1(Real(0.4995), Real(0.8665));
  EllipseLemmaReport r1 = ellipse_lemma_check(zeta, tau1, Real(1e-3));
  CHECK(r1.gamma.is_identity());
  CHECK(r1.pass);

  // tau = xi exactly: lhs of the conic inequality is 0 for gamma = I
  EllipseLemmaReport r2 = ellipse_lemma_check(zeta, zeta, Real(1e-6));
  CHECK(r2.pass);
  CHECK(r2.lhs_conic < pow2(-200));

  // nontrivial reduction: push a near-zeta point far away with gamma0
  UnimodularMatrix g0(2, 1, 1, 1);
  HPoint near_z(Real(0.4990), Real(0.8670));
  HPoint tau3 = apply(g0.inverse(), near_z);
  EllipseLemmaReport r3 = ellipse_lemma_check(zeta, tau3, Real(2e-3));
  CHECK(!r3.gamma.is_identity());
  CHECK(r3.pass);

  CHECK_THROWS_AS(ellipse_lemma_check(zeta, HPoint(Real(0L), Real(5L)), Real(1e-3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ellipse_lemma_check(zeta, zeta, Real(1L)), std::invalid_argument);
}

TEST_CASE("ellipse lemma randomized sweep") {
  Rng rng(9001);
  HPoint zeta = zeta_point();
  HPoint ip = HPoint::from_rational(mpq_class(0), mpq_class(1));
  int done = 0;
  while (done < 120) {
    const HPoint& xi = (done % 2 == 0) ? zeta : ip;
    double R = xi.abs().to_double();
    double epsmax = std::sqrt(3.0) / (3 * R + 2);
    double eps = rng.next_range(1e-6, epsmax * 0.999);
    double r = rng.next_range(0.0, eps * 0.98);
    double th = rng.next_range(0, 2 * M_PI);
    double px = xi.re().to_double() + r * std::cos(th);
    double py = xi.im().to_double() + r * std::sin(th);
    // keep the perturbed point in the closed domain
    if (std::fabs(px) > 0.5 || px * px + py * py < 1.0) continue;
    UnimodularMatrix g;
    int steps = static_cast<int>(rng.next_int(0, 6));
    for (int i = 0; i < steps; ++i)
      g = (rng.next_unit() < 0.5 ? UnimodularMatrix::S()
                                 : UnimodularMatrix::T(mpz_class(rng.next_int(-2, 2)))) *
          g;
    HPoint tau = apply(g.inverse(), HPoint(Real(px), Real(py)));
    EllipseLemmaReport rep = ellipse_lemma_check(xi, tau, Real(eps));
    CHECK(rep.pass);
    ++done;
  }
}

}  // TEST_SUITE
