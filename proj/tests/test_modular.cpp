#include <doctest.h>

#include <cmath>

#include "unitj/modular.hpp"

using namespace unitj;

namespace {

HPoint pt(double re, double im) { return HPoint(Real(re), Real(im)); }

UnimodularMatrix random_gamma_bounded(Rng& rng, long hmax) {
  for (;;) {
    UnimodularMatrix g;
    int steps = static_cast<int>(rng.next_int(2, 10));
    for (int i = 0; i < steps; ++i) {
      if (rng.next_unit() < 0.4)
        g = UnimodularMatrix::S() * g;
      else
        g = UnimodularMatrix::T(mpz_class(rng.next_int(-4, 4))) * g;
    }
    if (g.height_z() <= hmax) return g;
  }
}

}  // namespace

TEST_SUITE("modular") {

TEST_CASE("q-expansion has the canonical coefficients") {
  const QExpansion& E = j_qexpansion(8);
  CHECK(E.coeff(-1) == 1);
  CHECK(E.coeff(0) == 744);
  CHECK(E.coeff(1) == 196884);
  CHECK(E.coeff(2) == 21493760);
  CHECK(E.coeff(3) == mpz_class("864299970"));
  CHECK(E.coeff(4) == mpz_class("20245856256"));
}

TEST_CASE("j(i) = 1728") {
  JValue v = j_eval_err(HPoint::from_rational(mpq_class(0), mpq_class(1)));
  CHECK(abs(v.value.re - 1728L) < pow2(-200));
  CHECK(abs(v.value.im) < pow2(-200));
}

TEST_CASE("j(zeta) = 0") {
  JValue v = j_eval_err(zeta_point());
  CHECK(v.value.abs() < pow2(-200));
  // also via a float point at zeta (no shadow): adaptive precision must
  // certify the tiny value or the bound
  HPoint zf = pt(0.5, std::sqrt(3.0) / 2);  // double approximation, off zeta by ~5e-17
  Complex jz = j_eval(zf);
  CHECK(jz.abs() < Real(2e-44));  // ~ 45700 * (6e-17)^3
}

TEST_CASE("j(5i) is dominated by 1/q + 744") {
  Complex v = j_eval(HPoint::from_rational(mpq_class(0), mpq_class(5)));
  Real expect = exp(const_pi() * 10) + 744;
  // next term is 196884 e^{-10pi} ~ 4.5e-9
  CHECK(abs(v.re - expect) < Real(1e-8));
  CHECK(abs(v.re - expect) > Real(1e-10));
  CHECK(abs(v.im) < Real(1e-30));
}

TEST_CASE("E-route agrees with the q-expansion oracle") {
  Rng rng(11);
  for (int k = 0; k < 25; ++k) {
    HPoint tau = pt(rng.next_range(-0.5, 0.5), rng.next_range(0.9, 2.5));
    JValue via_e = j_eval_err(tau);
    // oracle: direct coefficient summation at the reduced point
    ReduceResult rr = reduce(tau);
    Real two_pi = const_pi() * 2;
    Complex q = exp(Complex(-(two_pi * rr.point.im()), two_pi * rr.point.re()));
    const QExpansion& E = j_qexpansion(80);
    JValue via_c = E.eval(q);
    CHECK((via_e.value - via_c.value).abs() <= via_e.abs_err + via_c.abs_err + pow2(-220));
  }
}

TEST_CASE("SL2 invariance") {
  // exact rational points: gamma tau is then exact, so the test sees the
  // evaluation error alone and not the quantization of gamma tau
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    UnimodularMatrix g = random_gamma_bounded(rng, 100);
    mpq_class re(rng.next_int(-500, 500), 1000);
    mpq_class im(rng.next_int(900, 3000), 1000);
    re.canonicalize();
    im.canonicalize();
    HPoint tau = HPoint::from_rational(re, im);
    Complex a = j_eval(tau);
    Complex b = j_eval(apply(g, tau));
    CHECK((a - b).abs() <= pow2(-240));
  }
}

TEST_CASE("Schwarz reflection") {
  Rng rng(23);
  for (int k = 0; k < 50; ++k) {
    HPoint tau = pt(rng.next_range(-0.5, 0.5), rng.next_range(0.9, 3.0));
    HPoint mirr = pt(-tau.re().to_double(), tau.im().to_double());
    Complex a = j_eval(tau);
    Complex b = j_eval(mirr);
    CHECK(abs(a.re - b.re) <= pow2(-230));
    CHECK(abs(a.im + b.im) <= pow2(-230));
  }
}

TEST_CASE("derivatives vanish at the elliptic points") {
  JValue d1 = j_derivative_err(HPoint::from_rational(mpq_class(0), mpq_class(1)), 1);
  CHECK(d1.value.abs() < pow2(-200));
  JValue dz = j_derivative_err(zeta_point(), 1);
  CHECK(dz.value.abs() < pow2(-200));
  // j''(i) = -3456 pi^2 E4(i), real and negative
  JValue d2 = j_derivative_err(HPoint::from_rational(mpq_class(0), mpq_class(1)), 2);
  CHECK(d2.value.re.sgn() < 0);
  CHECK(abs(d2.value.im) < pow2(-180));
  EisensteinAtPoint eis = eisenstein_at(HPoint::from_rational(mpq_class(0), mpq_class(1)));
  Real expect = Real(-3456L) * const_pi() * const_pi() * eis.e4.re;
  CHECK(abs(d2.value.re - expect) < Real(1e-50));
  CHECK(abs(eis.e6.re) < pow2(-200));  // E6(i) = 0
}

TEST_CASE("derivative agrees with central finite differences") {
  // (j(tau+h) - j(tau-h)) / 2h with h = 1e-20 at 256 bits
  HPoint tau = HPoint::from_rational(mpq_class(0), mpq_class(2));
  Complex d = j_derivative(tau, 1);
  CHECK(d.abs() > Real(1L));  // nonzero away from elliptic points
  mpq_class h(1, 1);
  for (int i = 0; i < 20; ++i) h /= 10;
  Complex jp = j_eval(HPoint::from_exact(mpq_class(0), mpq_class((mpq_class(2) + h) * (mpq_class(2) + h))));
  Complex jm = j_eval(HPoint::from_exact(mpq_class(0), mpq_class((mpq_class(2) - h) * (mpq_class(2) - h))));
  // d tau = i dh here, so j' = (j(tau+ih) - j(tau-ih)) / (2 i h)
  Complex fd = (jp - jm) / Complex(Real(0L), Real(mpq_class(2) * h));
  CHECK(((d - fd).abs() / d.abs()) < Real(1e-10));

  JValue d2 = j_derivative_err(tau, 2);
  Complex j0 = j_eval(tau);
  Complex fd2 = (jp - Real(2L) * j0 + jm) / Complex(-Real(mpq_class(h * h)), Real(0L));
  CHECK(((d2.value - fd2).abs() / d2.value.abs()) < Real(1e-8));
}

TEST_CASE("derivative chain rule below the fundamental domain") {
  // tau with Im < sqrt(3)/2: derivative transforms, j does not
  HPoint low = pt(0.3, 0.2);
  Complex d = j_derivative(low, 1);
  // finite-difference oracle straight at the point (series still converges
  // after internal reduction)
  double h = 1e-12;
  Complex jp = j_eval(pt(0.3 + h, 0.2));
  Complex jm = j_eval(pt(0.3 - h, 0.2));
  Complex fd = (jp - jm) / Complex(Real(2 * h), Real(0L));
  CHECK(((d - fd).abs() / d.abs()) < Real(1e-3));
}

TEST_CASE("jbound: fixed examples") {
  // far case at i
  JBoundReport r1 = jbound_check(HPoint::from_rational(mpq_class(0), mpq_class(1)));
  CHECK(!r1.near_case);
  CHECK(r1.pass);
  CHECK(r1.jabs.to_double() == doctest::Approx(1728.0));

  // bracket case near zeta: tau = zeta + 5e-4 * e^{i 2pi/3} points into F_+
  {
    Real r(5e-4);
    Real c = cos(const_pi() * 2 / 3), s = sin(const_pi() * 2 / 3);
    HPoint tau(Real(0.5) + r * c, sqrt(const_sqrt3() * const_sqrt3() / 4) + r * s);
    JBoundReport rep = jbound_check(tau);
    CHECK(rep.near_case);
    CHECK(!rep.against_zeta2);
    CHECK(rep.pass);
  }

  // bracket case near zeta^2 in F_-
  {
    Real r(5e-4);
    Real c = cos(const_pi() / 3), s = sin(const_pi() / 3);
    HPoint tau(Real(-0.5) + r * c, const_sqrt3() / 2 + r * s);
    JBoundReport rep = jbound_check(tau);
    CHECK(rep.near_case);
    CHECK(rep.against_zeta2);
    CHECK(rep.pass);
  }

  CHECK_THROWS_AS(jbound_check(pt(0.4, 0.5)), std::invalid_argument);
}

TEST_CASE("jbound grid near zeta (reduced sample)") {
  // radial/angular grid pointing into F_+ from zeta; directions between
  // the vertical edge (90 deg) and the circle tangent (150 deg)
  int pass = 0, near = 0, total = 0;
  for (int ir = 0; ir < 10; ++ir) {
    double r = std::pow(10.0, -6.0 + 2.997 * ir / 9.0);  // 1e-6 .. ~1e-3
    for (int ia = 0; ia < 10; ++ia) {
      double th = (92.0 + 56.0 * ia / 9.0) * M_PI / 180.0;
      HPoint tau(Real(0.5 + r * std::cos(th)),
                 Real(std::sqrt(3.0) / 2 + r * std::sin(th)));
      JBoundReport rep = jbound_check(tau);
      ++total;
      if (rep.pass) ++pass;
      if (rep.near_case) ++near;
    }
  }
  CHECK(pass == total);
  CHECK(near == total);
}

}  // TEST_SUITE
