#include "unitj/curves.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "unitj/modular.hpp"

namespace unitj {

CurveOverQ::CurveOverQ(const mpq_class& g2, const mpq_class& g3, bool cm_flag)
    : g2_(g2), g3_(g3), cm_flag_(cm_flag) {
  g2_.canonicalize();
  g3_.canonicalize();
  mpq_class core = g2_ * g2_ * g2_ - 27 * g3_ * g3_;
  disc_ = 16 * core;
  if (disc_ == 0) throw singular_curve("curve is singular: g2^3 - 27 g3^2 = 0");
  j0_ = 1728 * g2_ * g2_ * g2_ / core;
  j0_.canonicalize();
}

mpq_class j_invariant(const mpq_class& g2, const mpq_class& g3) {
  mpq_class core = g2 * g2 * g2 - 27 * g3 * g3;
  if (core == 0) throw singular_curve("j_invariant: singular curve");
  mpq_class j = 1728 * g2 * g2 * g2 / core;
  j.canonicalize();
  return j;
}

namespace {

// roots of the monic depressed cubic x^3 + p x + q by Cardano plus Newton
// polish on 4x^3 - g2 x - g3
std::array<Complex, 3> cubic_roots(const mpq_class& g2q, const mpq_class& g3q,
                                   mpfr_prec_t pwork) {
  PrecisionScope scope(pwork);
  Real g2(g2q), g3(g3q);
  Complex p(-(g2 / 4), Real(0L));
  Complex q(-(g3 / 4), Real(0L));
  Complex w = sqrt(q * q * Real(mpq_class(1, 4)) + p * p * p * Real(mpq_class(1, 27)));
  Complex cand1 = -(q * Real(mpq_class(1, 2))) + w;
  Complex cand2 = -(q * Real(mpq_class(1, 2))) - w;
  Complex a3 = cand1.abs() >= cand2.abs() ? cand1 : cand2;
  Complex u = cbrt_principal(a3);
  std::array<Complex, 3> roots;
  Real half(mpq_class(1, 2));
  Complex omega(-half, const_sqrt3() / 2);  // primitive cube root of unity
  Complex uk = u;
  for (int k = 0; k < 3; ++k) {
    Complex x = uk - p / (uk * Real(3L));
    // Newton on f = 4x^3 - g2 x - g3
    for (int it = 0; it < 6; ++it) {
      Complex f = x * x * x * Real(4L) - Complex(g2) * x - Complex(g3);
      Complex fp = x * x * Real(12L) - Complex(g2);
      if (fp.abs().is_zero()) break;
      x = x - f / fp;
    }
    roots[k] = x;
    uk = uk * omega;
  }
  return roots;
}

// AGM with the standard branch choice |a - b| <= |a + b|, ties toward
// Im(b/a) > 0
Complex agm(Complex a, Complex b, mpfr_prec_t pwork) {
  Real stop = pow2(-static_cast<long>(pwork) + 8, pwork);
  for (long it = 0; it < 4 * static_cast<long>(pwork); ++it) {
    Complex a1 = (a + b) * Real(mpq_class(1, 2));
    Complex b1 = sqrt(a * b);
    int cmp_branch = cmp((a1 - b1).abs(), (a1 + b1).abs());
    if (cmp_branch > 0) {
      b1 = -b1;
    } else if (cmp_branch == 0) {
      Complex r = b1 / a1;
      if (r.im.sgn() < 0) b1 = -b1;
    }
    a = a1;
    b = b1;
    if ((a - b).abs() <= a.abs() * stop) return a;
  }
  throw precision_exhausted("agm: no convergence");
}

Complex cpow(const Complex& z, int n) {
  Complex r(Real(1L), Real(0L));
  for (int i = 0; i < n; ++i) r = r * z;
  return r;
}

}  // namespace

PeriodLattice periods(const CurveOverQ& curve, mpfr_prec_t prec) {
  if (prec == 0) prec = default_precision();
  for (int attempt = 0; attempt < 3; ++attempt) {
    mpfr_prec_t pwork = (prec + 64) << attempt;
    PrecisionScope scope(pwork);
    std::array<Complex, 3> base = cubic_roots(curve.g2(), curve.g3(), pwork);
    Real tol = pow2(-static_cast<long>(prec) + 32, pwork);
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const int* pm : perms) {
      const Complex &e1 = base[pm[0]], &e2 = base[pm[1]], &e3 = base[pm[2]];
      Complex m1, m2;
      try {
        m1 = agm(sqrt(e1 - e3), sqrt(e1 - e2), pwork);
        m2 = agm(sqrt(e1 - e3), sqrt(e2 - e3), pwork);
      } catch (const precision_exhausted&) {
        continue;
      }
      if (m1.abs().is_zero() || m2.abs().is_zero()) continue;
      Real pi = const_pi(pwork);
      Complex w1 = Complex(pi, Real(0L)) / m1;
      Complex w2 = Complex(Real(0L), pi) / m2;
      Complex ratio = w2 / w1;
      if (ratio.im.is_zero()) continue;
      if (ratio.im.sgn() < 0) {
        w2 = -w2;
        ratio = -ratio;
      }
      HPoint tau(ratio.re, ratio.im);
      std::optional<ReduceResult> rro;
      try {
        rro = reduce(tau);
      } catch (const precision_exhausted&) {
        continue;
      }
      ReduceResult& rr = *rro;
      // the AGM carries ~2^{-pwork+12} of error, wider than reduce()'s own
      // tie band; re-apply the canonical boundary preferences at that scale
      {
        Real band = pow2(-static_cast<long>(prec) / 2, pwork);
        Real n2 = rr.point.re() * rr.point.re() + rr.point.im() * rr.point.im();
        if (abs(n2 - 1) <= band && rr.point.re().sgn() < 0)
          rr = ReduceResult{apply(UnimodularMatrix::S() * rr.matrix, tau),
                            UnimodularMatrix::S() * rr.matrix};
        if (abs(rr.point.re() + Real(mpq_class(1, 2))) <= band)
          rr = ReduceResult{apply(UnimodularMatrix::T(1) * rr.matrix, tau),
                            UnimodularMatrix::T(1) * rr.matrix};
      }
      const UnimodularMatrix& g = rr.matrix;
      Complex w2p = Complex(Real(g.a())) * w2 + Complex(Real(g.b())) * w1;
      Complex w1p = Complex(Real(g.c())) * w2 + Complex(Real(g.d())) * w1;
      // validate: recompute g2, g3 from the lattice via E4, E6
      HPoint red = rr.point;
      EisensteinAtPoint eis = eisenstein_at(red);
      Real twopi = pi * 2;
      Real c4 = pow(twopi, 4L) / 12;
      Real c6 = pow(twopi, 6L) / 216;
      Complex g2c = Complex(c4) * eis.e4 / cpow(w1p, 4);
      Complex g3c = Complex(c6) * eis.e6 / cpow(w1p, 6);
      Real scale2 = max(Real(1L), abs(Real(curve.g2())));
      Real scale3 = max(Real(1L), abs(Real(curve.g3())));
      if ((g2c - Complex(Real(curve.g2()))).abs() <= scale2 * tol &&
          (g3c - Complex(Real(curve.g3()))).abs() <= scale3 * tol) {
        // round down to the requested precision
        Real r1(prec, 0), i1(prec, 0), r2(prec, 0), i2(prec, 0);
        mpfr_set(r1.raw(), w1p.re.raw(), MPFR_RNDN);
        mpfr_set(i1.raw(), w1p.im.raw(), MPFR_RNDN);
        mpfr_set(r2.raw(), w2p.re.raw(), MPFR_RNDN);
        mpfr_set(i2.raw(), w2p.im.raw(), MPFR_RNDN);
        Real tr(prec, 0), ti(prec, 0);
        mpfr_set(tr.raw(), red.re().raw(), MPFR_RNDN);
        mpfr_set(ti.raw(), red.im().raw(), MPFR_RNDN);
        return PeriodLattice{Complex(r1, i1), Complex(r2, i2), HPoint(tr, ti)};
      }
    }
  }
  throw precision_exhausted("periods: no AGM branch reproduced the curve invariants");
}

CurveHeight curve_height(const CurveOverQ& curve) {
  CurveHeight out;
  // projective height of (1 : g2 : g3): clear denominators to coprime
  // integers and take log of the largest absolute value
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), curve.g2().get_den().get_mpz_t(),
          curve.g3().get_den().get_mpz_t());
  mpq_class n2q = curve.g2() * den, n3q = curve.g3() * den;
  n2q.canonicalize();
  n3q.canonicalize();
  mpz_class n0 = den, n2 = n2q.get_num(), n3 = n3q.get_num();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n0.get_mpz_t(), n2.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n3.get_mpz_t());
  n0 /= g;
  n2 /= g;
  n3 /= g;
  mpz_class big = ::abs(n0);
  if (::abs(n2) > big) big = ::abs(n2);
  if (::abs(n3) > big) big = ::abs(n3);
  out.h_proj = log(Real(big));
  out.h_j0 = height(AlgebraicNumber::rational(curve.j0()));
  out.h = max(Real(1L), max(out.h_proj, out.h_j0));
  return out;
}

TauHeightReport tau_height_check(const PeriodLattice& lattice, long degree, const Real& h_j0) {
  if (degree < 1) throw std::invalid_argument("tau_height_check: degree must be >= 1");
  TauHeightReport rep;
  rep.lhs = lattice.tau0.abs() / degree;
  rep.rhs = 3 * max(Real(1L), h_j0);
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

namespace {

// standard reduction of a positive definite integer form
void reduce_form(mpz_class& A, mpz_class& B, mpz_class& C) {
  for (;;) {
    // normalize B into (-A, A]
    if (B > A || B <= -A) {
      mpz_class t, twoA = 2 * A;
      // k = round(B / 2A) so that B - 2kA lands in (-A, A]
      mpz_class num = B + A - 1;
      mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), twoA.get_mpz_t());
      C += t * t * A - t * B;
      B -= 2 * t * A;
    }
    if (A > C) {
      std::swap(A, C);
      B = -B;
      continue;
    }
    break;
  }
  if (A == C && B < 0) B = -B;
}

}  // namespace

CMPoint cm_point(const mpz_class& A0, const mpz_class& B0, const mpz_class& C0,
                 mpfr_prec_t prec) {
  if (A0 <= 0) throw std::invalid_argument("cm_point: A must be positive");
  mpz_class disc = B0 * B0 - 4 * A0 * C0;
  if (disc >= 0) throw std::invalid_argument("cm_point: form must be negative definite");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), A0.get_mpz_t(), B0.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C0.get_mpz_t());
  if (g != 1) throw std::invalid_argument("cm_point: form must be primitive");
  mpz_class A = A0, B = B0, C = C0;
  reduce_form(A, B, C);
  mpq_class x(-B, 2 * A);
  mpq_class y2(-disc, 4 * A * A);
  x.canonicalize();
  y2.canonicalize();
  return CMPoint{A, B, C, HPoint::from_exact(x, y2, prec), disc};
}

Real cm_height(const CMPoint& xi) {
  mpz_class m = xi.A > xi.C ? xi.A : xi.C;
  return sqrt(Real(m));
}

std::vector<std::array<mpz_class, 3>> reduced_forms(const mpz_class& delta) {
  if (delta >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  mpz_class mod = ((delta % 4) + 4) % 4;
  if (mod != 0 && mod != 1)
    throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4");
  std::vector<std::array<mpz_class, 3>> out;
  mpz_class plimit = ::abs(delta) / 3;
  for (mpz_class b = (delta % 2 == 0) ? 0 : 1; b * b <= plimit; b += 2) {
    mpz_class m4 = b * b - delta;  // = 4AC
    mpz_class m = m4 / 4;
    for (mpz_class a = b > 1 ? b : 1; a * a <= m; ++a) {
      if (m % a != 0) continue;
      mpz_class c = m / a;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g != 1) continue;
      // (a, b, c) with 0 <= b <= a <= c; add (a, -b, c) when it is a
      // distinct reduced form (b != 0, a != b, a != c)
      out.push_back({a, b, c});
      if (b != 0 && a != b && a != c) out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& f, const auto& gf) {
    if (f[0] != gf[0]) return f[0] < gf[0];
    if (f[1] != gf[1]) return f[1] < gf[1];
    return f[2] < gf[2];
  });
  return out;
}

CConstant c_constant(const CMPoint& xi) {
  if (xi.delta == -3) throw std::domain_error("c_constant: xi at the order-3 elliptic point");
  mpfr_prec_t prec = xi.root.prec();
  PrecisionScope scope(prec);
  CConstant out;
  const bool is_i = xi.A == 1 && xi.B == 0 && xi.C == 1;
  const bool on_edge = xi.B == xi.A || xi.B == -xi.A;  // |Re| = 1/2
  const bool on_circle = xi.A == xi.C;                 // |xi| = 1
  out.branch = is_i ? 1 : (on_edge || on_circle ? 0 : 2);

  Complex jv = j_eval(xi.root);
  Complex deriv = is_i ? j_derivative(xi.root, 2) : j_derivative(xi.root, 1);
  Real Aconst = deriv.abs();
  Real Bconst = Real(400000L) * max(Real(1L), jv.abs());

  // delta: min of A/(12A + 108B) and half the distance to each geodesic
  // bounding F_+ that does not contain the point
  Real d = Aconst / (12 * Aconst + 108 * Bconst);
  Real absre = abs(xi.root.re());
  Real half(mpq_class(1, 2));
  if (xi.B != 0) d = min(d, absre / 2);                        // Re = 0 axis
  if (!on_edge) d = min(d, (half - absre) / 2);                // |Re| = 1/2
  if (!on_circle) d = min(d, abs(xi.root.abs() - 1) / 2);      // unit circle
  out.delta = d;

  out.degenerate = false;
  if (is_i) {
    out.value = Aconst * d * d / 4;
  } else if (on_edge || on_circle) {
    out.value = Aconst * d / 2;
  } else {
    Real im_j = abs(jv.im);
    if (xi.B == 0) {
      // j is real on the imaginary axis: the interior minimum degenerates
      out.value = Real(0L);
      out.degenerate = true;
    } else {
      out.value = min(im_j, Aconst * d / 2);
      if (out.value.is_zero()) out.degenerate = true;
    }
  }
  return out;
}

PenResult pen(const CMPoint& xi) {
  PenResult out;
  out.unbounded = false;
  Real best(1L);
  auto forms = reduced_forms(xi.delta);
  out.class_number = static_cast<long>(forms.size());
  for (const auto& f : forms) {
    CMPoint conj = cm_point(f[0], f[1], f[2], xi.root.prec());
    CConstant c = c_constant(conj);
    if (c.degenerate) {
      out.unbounded = true;
      continue;
    }
    best = max(best, max(Real(1L), 1L / c.value));
  }
  out.value = log(best);
  return out;
}

}  // namespace unitj
