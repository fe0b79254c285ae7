#include "unitj/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace unitj {

Ellipse::Ellipse(Real A, Real B, Real C) : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
  if (!(A_.sgn() > 0)) throw std::invalid_argument("Ellipse: A must be positive");
  if (!(discriminant().sgn() > 0))
    throw std::invalid_argument("Ellipse: form must be definite (4AC - B^2 > 0)");
}

Real ellipse_area(const Ellipse& e) {
  return const_pi(e.A().prec()) * 2 / sqrt(e.discriminant());
}

Real circumference_bound(const Ellipse& e) {
  return sqrt(Real(2L) * (e.A() + e.C())) * ellipse_area(e);
}

namespace {

// adaptive Simpson with the classical 1/15 correction
Real simpson_adapt(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                   const Real& fa, const Real& fm, const Real& fb, const Real& whole,
                   const Real& tol, int depth) {
  Real m = (a + b) / 2;
  Real lm = (a + m) / 2, rm = (m + b) / 2;
  Real flm = f(lm), frm = f(rm);
  Real left = (m - a) / 6 * (fa + 4 * flm + fm);
  Real right = (b - m) / 6 * (fm + 4 * frm + fb);
  Real delta = left + right - whole;
  if (depth > 48 || abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_adapt(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
         simpson_adapt(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

Real integrate(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
               const Real& tol) {
  Real fa = f(a), fb = f(b), fm = f((a + b) / 2);
  Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_adapt(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

Real perimeter_numeric(const Ellipse& e) {
  mpfr_prec_t p = e.A().prec();
  PrecisionScope scope(std::max<mpfr_prec_t>(p, 128));
  Real h = hypot(e.A() - e.C(), e.B());
  Real Ap = (e.A() + e.C() + h) / 2;
  Real Cp = (e.A() + e.C() - h) / 2;
  Real semi_p = 1L / sqrt(Ap), semi_q = 1L / sqrt(Cp);  // semi-axes
  Real p2 = semi_p * semi_p, q2 = semi_q * semi_q;
  auto f = [&](const Real& t) {
    Real s = sin(t), c = cos(t);
    return sqrt(p2 * s * s + q2 * c * c);
  };
  Real quart = const_pi() / 2;
  Real tol = (semi_p + semi_q) * Real(1e-13);
  return integrate(f, Real(0L), quart, tol) * 4;
}

long long lattice_count(const Ellipse& e, const Real& scale) {
  if (!(scale.sgn() > 0)) return scale.sgn() == 0 ? 1 : 0;
  mpfr_prec_t p = std::max<mpfr_prec_t>(e.A().prec(), 128);
  PrecisionScope scope(p);
  const Real &A = e.A(), &B = e.B(), &C = e.C();
  Real disc = e.discriminant();
  Real amax = sqrt(Real(4L) * C * scale / disc);
  Real cmax = sqrt(Real(4L) * A * scale / disc);
  Real box = (amax * 2 + 1) * (cmax * 2 + 1);
  if (box > Real(1e9)) throw std::overflow_error("lattice_count: bounding box exceeds 1e9 points");

  Real margin = ldexp(max(scale, Real(1L)), -static_cast<long>(p) / 2);
  auto inside = [&](long long a, long long c) {
    Real av(static_cast<long>(a)), cv(static_cast<long>(c));
    return A * av * av + B * av * cv + C * cv * cv <= scale + margin;
  };

  long long hi_a = amax.to_long() + 2;
  long long count = 0;
  for (long long a = -hi_a; a <= hi_a; ++a) {
    // C c^2 + (B a) c + (A a^2 - s) <= 0
    Real av(static_cast<long>(a));
    Real D = B * B * av * av - Real(4L) * C * (A * av * av - scale);
    if (D.sgn() < 0) continue;
    Real sq = sqrt(D);
    Real clo = (-B * av - sq) / (C * 2);
    Real chi = (-B * av + sq) / (C * 2);
    long long c0 = ceil(clo - Real(0.5)).to_long();
    long long c1 = floor(chi + Real(0.5)).to_long();
    // edge correction: trust the form itself at the boundary candidates
    while (c0 <= c1 && !inside(a, c0)) ++c0;
    while (inside(a, c0 - 1)) --c0;
    while (c1 >= c0 && !inside(a, c1)) --c1;
    while (inside(a, c1 + 1)) ++c1;
    if (c0 <= c1) count += c1 - c0 + 1;
  }
  return count;
}

DavenportReport davenport_check(const Ellipse& e, const Real& scale) {
  DavenportReport rep;
  rep.count = lattice_count(e, scale);
  rep.area = ellipse_area(e) * scale;
  Ellipse scaled(e.A() / scale, e.B() / scale, e.C() / scale);
  rep.perimeter = perimeter_numeric(scaled);
  rep.lhs = abs(Real(static_cast<long>(rep.count)) - rep.area);
  rep.rhs = (rep.perimeter + 1) * 4;
  rep.pass = rep.lhs < rep.rhs;
  return rep;
}

namespace {

void validate_annulus(const AnnulusSpec& s) {
  if (s.nu != 1 && s.nu != -1) throw std::invalid_argument("AnnulusSpec: nu must be +-1");
  if (!(s.y.sgn() > 0)) throw std::invalid_argument("AnnulusSpec: y must be positive");
  if (s.eps.sgn() < 0) throw std::invalid_argument("AnnulusSpec: eps must be >= 0");
  Real R = s.xi.abs();
  Real cap = pow(s.xi.im() / (R * R * R * 100), 2L);
  if (s.eps > cap)
    throw std::invalid_argument("AnnulusSpec: eps exceeds (Im(xi)/(100|xi|^3))^2");
}

}  // namespace

std::vector<std::pair<int64_t, int64_t>> annulus_pairs(const AnnulusSpec& spec) {
  validate_annulus(spec);
  mpfr_prec_t p = std::max<mpfr_prec_t>(spec.xi.prec(), 128);
  PrecisionScope scope(p);
  Real R = spec.xi.abs();
  Real absre = abs(spec.xi.re());
  Real t = spec.xi.im() / spec.y;
  Real w = Real(50L) * R * R * R * sqrt(spec.eps) / spec.y;
  Real hi = t + w, lo = t - w;
  // lambda = a^2 + nu 2|Re xi| ac + |xi|^2 c^2 has discriminant -4 Im(xi)^2
  Real disc = Real(4L) * spec.xi.im() * spec.xi.im();
  Real cmax = sqrt(Real(4L) * hi / disc);
  Real amax = sqrt(Real(4L) * R * R * hi / disc);
  if ((amax * 2 + 1) * (cmax * 2 + 1) > Real(1e9))
    throw std::overflow_error("annulus_pairs: bounding box exceeds 1e9 points");
  Real margin = ldexp(max(hi, Real(1L)), -static_cast<long>(p) / 2);
  Real B = Real(2L * spec.nu) * absre;
  std::vector<std::pair<int64_t, int64_t>> out;
  long long cm = cmax.to_long() + 2;
  for (long long c = -cm; c <= cm; ++c) {
    Real cv(static_cast<long>(c));
    // a^2 + B c a + (R^2 c^2 - hi) <= 0
    Real D = B * B * cv * cv - Real(4L) * (R * R * cv * cv - hi);
    if (D.sgn() < 0) continue;
    Real sq = sqrt(D);
    Real alo = (-B * cv - sq) / 2, ahi = (-B * cv + sq) / 2;
    for (long long a = ceil(alo - Real(0.5)).to_long() - 1;
         a <= floor(ahi + Real(0.5)).to_long() + 1; ++a) {
      Real av(static_cast<long>(a));
      Real lam = av * av + B * av * cv + R * R * cv * cv;
      if (lam <= hi + margin && lam >= lo - margin) out.emplace_back(a, c);
    }
  }
  return out;
}

Real annulus_count_bound(const AnnulusSpec& spec) {
  validate_annulus(spec);
  Real pi = const_pi(std::max<mpfr_prec_t>(spec.xi.prec(), 128));
  Real R = spec.xi.abs();
  Real first = pi * 16 * (sqrt(spec.xi.im() * 2) + sqrt(spec.y)) / sqrt(spec.y);
  Real second = pi * 100 * R * R * R * sqrt(spec.eps) / (spec.y * spec.xi.im());
  return (first + second) * 2;
}

Real matrix_count_bound(const HPoint& xi, const Real& x, const Real& y, const Real& eps) {
  if (x.sgn() < 0) throw std::invalid_argument("matrix_count_bound: x must be >= 0");
  AnnulusSpec s{xi, y, eps, 1};
  Real R = xi.abs();
  return annulus_count_bound(s) * (x * 4 + R * 13);
}

namespace {

struct SegmentGeometry {
  Real x, y, eps2;
  Real xi_re, xi_im;
};

enum class Verdict { yes, no, maybe };

// one x-interval: |gamma tau - xi| <= eps and gamma tau in closed F?
Verdict segment_verdict(const SegmentGeometry& g, long a, long b, long c, long d,
                        const Interval& X) {
  Interval u = iv_add_const(iv_scale(X, Real(a)), Real(b));
  Interval v = iv_add_const(iv_scale(X, Real(c)), Real(d));
  Real cy = Real(c) * g.y;
  Interval den = iv_add(iv_sqr(v), Interval(cy * cy));
  if (den.lo.sgn() <= 0) return Verdict::maybe;
  Interval re = iv_div(iv_add(iv_mul(u, v), Interval(Real(a) * Real(c) * g.y * g.y)), den);
  Interval im = iv_div(Interval(g.y), den);
  Interval d2 = iv_add(iv_sqr(iv_add_const(re, -g.xi_re)), iv_sqr(iv_add_const(im, -g.xi_im)));
  if (d2.lo > g.eps2) return Verdict::no;
  Real half(mpq_class(1, 2));
  Interval n2 = iv_add(iv_sqr(re), iv_sqr(im));
  if (re.lo > half || re.hi < -half || n2.hi < 1) return Verdict::no;
  bool disc_yes = d2.hi <= g.eps2;
  bool f_yes = re.hi <= half && re.lo >= -half && n2.lo >= 1;
  if (disc_yes && f_yes) return Verdict::yes;
  return Verdict::maybe;
}

// does any point of |xt| <= x put gamma(xt + iy) within eps of xi, inside F?
bool segment_hits(const SegmentGeometry& g, long a, long b, long c, long d) {
  Real width_floor = pow2(-40, 128);
  std::vector<Interval> stack{Interval(-g.x, g.x)};
  bool ambiguous = false;
  while (!stack.empty()) {
    Interval X = stack.back();
    stack.pop_back();
    Verdict v = segment_verdict(g, a, b, c, d, X);
    if (v == Verdict::yes) return true;
    if (v == Verdict::no) continue;
    if (X.width() <= width_floor) {
      // unresolvable sliver: counted in (safe for the <= bound checks)
      ambiguous = true;
      continue;
    }
    Real m = X.mid();
    stack.emplace_back(X.lo, m);
    stack.emplace_back(m, X.hi);
  }
  return ambiguous;
}

}  // namespace

long long matrix_count_bruteforce(const HPoint& xi, const Real& x, const Real& y,
                                  const Real& eps, long entry_cap) {
  mpfr_prec_t p = 128;
  PrecisionScope scope(p);
  Real R = xi.abs();
  Real sqrt3 = const_sqrt3(p);
  if (eps > sqrt3 / (R * 3 + 2))
    throw std::invalid_argument("matrix_count_bruteforce: eps beyond the reduction-lemma range");
  if (x.sgn() < 0) throw std::invalid_argument("matrix_count_bruteforce: x must be >= 0");
  // search bounds from the reduction lemma
  Real acR = sqrt((R * 4 + 1) / (sqrt3 * y));
  Real bdR = acR * x + (R * 4 + 1) / sqrt3;
  long acmax = acR.to_long() + 1;
  long bdmax = bdR.to_long() + 1;
  if (acmax > entry_cap || bdmax > entry_cap)
    throw std::invalid_argument("matrix_count_bruteforce: entry_cap below the lemma bounds");

  SegmentGeometry g;
  Real xw(p, 0), yw(p, 0);
  mpfr_set(xw.raw(), x.raw(), MPFR_RNDN);
  mpfr_set(yw.raw(), y.raw(), MPFR_RNDN);
  g.x = xw;
  g.y = yw;
  g.eps2 = eps * eps;
  g.xi_re = xi.re();
  g.xi_im = xi.im();

  long long count = 0;
  for (long c = 0; c <= acmax; ++c) {
    for (long a = -acmax; a <= acmax; ++a) {
      if (c == 0 && a <= 0) continue;  // one representative per sign pair
      if (std::gcd(std::labs(a), std::labs(c)) != 1) continue;
      // extended gcd: s a + t c = 1, so (b0, d0) = (-t, s) solves ad - bc = 1
      long long s, t;
      {
        long long old_r = a, r = c, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
        while (r != 0) {
          long long q = old_r / r;
          long long tmp = old_r - q * r;
          old_r = r;
          r = tmp;
          tmp = old_s - q * s1;
          old_s = s1;
          s1 = tmp;
          tmp = old_t - q * t1;
          old_t = t1;
          t1 = tmp;
        }
        s = old_s;
        t = old_t;
        if (old_r < 0) {
          s = -s;
          t = -t;
        }
      }
      long long d0 = s, b0 = -t;
      // family (b, d) = (b0 + k a, d0 + k c), clamped by the |b|, |d| bounds
      double kmin = -1e18, kmax = 1e18;
      if (a != 0) {
        double lo = (-bdmax - static_cast<double>(b0)) / a;
        double hi = (bdmax - static_cast<double>(b0)) / a;
        kmin = std::max(kmin, std::min(lo, hi));
        kmax = std::min(kmax, std::max(lo, hi));
      }
      if (c != 0) {
        double lo = (-bdmax - static_cast<double>(d0)) / c;
        double hi = (bdmax - static_cast<double>(d0)) / c;
        kmin = std::max(kmin, std::min(lo, hi));
        kmax = std::min(kmax, std::max(lo, hi));
      }
      long long k0 = static_cast<long long>(std::floor(kmin)) - 1;
      long long k1 = static_cast<long long>(std::ceil(kmax)) + 1;
      for (long long k = k0; k <= k1; ++k) {
        long long b = b0 + k * a, d = d0 + k * c;
        if (std::llabs(b) > bdmax || std::llabs(d) > bdmax) continue;
        if (segment_hits(g, a, b, c, d)) ++count;
      }
    }
  }
  return count;
}

EllipseLemmaReport ellipse_lemma_check(const HPoint& xi, const HPoint& tau, const Real& eps) {
  mpfr_prec_t p = std::max(xi.prec(), tau.prec());
  PrecisionScope scope(p);
  Real R = xi.abs();
  Real sqrt3 = const_sqrt3(p);
  if (eps > sqrt3 / (R * 3 + 2))
    throw std::invalid_argument("ellipse_lemma_check: eps beyond sqrt(3)/(3|xi|+2)");
  ReduceResult rr = reduce(tau);
  Real dist = rr.point.dist(xi);
  if (dist > eps * (1 + pow2(-static_cast<long>(p) / 2, p)))
    throw std::invalid_argument("ellipse_lemma_check: reduced point is not within eps of xi");

  EllipseLemmaReport rep;
  rep.gamma = rr.matrix;
  Real a(rr.matrix.a()), b(rr.matrix.b()), c(rr.matrix.c()), d(rr.matrix.d());
  Real absre_xi = abs(xi.re());
  Real target = xi.im() / tau.im();
  Real lhs_plus = abs(a * a + 2 * absre_xi * a * c + R * R * c * c - target);
  Real lhs_minus = abs(a * a - 2 * absre_xi * a * c + R * R * c * c - target);
  rep.nu = lhs_plus <= lhs_minus ? 1 : -1;
  rep.lhs_conic = min(lhs_plus, lhs_minus);
  rep.rhs_conic = Real(7L) * (R * 4 + 1) / sqrt3 * R * R * sqrt(eps) / tau.im();
  rep.pass_conic = rep.lhs_conic <= rep.rhs_conic;

  rep.max_ac2 = max(a * a, c * c);
  rep.rhs_ac2 = (R * 4 + 1) / (sqrt3 * tau.im());
  rep.pass_ac2 = rep.max_ac2 <= rep.rhs_ac2;

  Real edge = (R * 4 + 1) / sqrt3;
  rep.lhs_b = abs(b);
  rep.rhs_b = abs(a) * abs(tau.re()) + edge;
  rep.pass_b = rep.lhs_b <= rep.rhs_b;
  rep.lhs_d = abs(d);
  rep.rhs_d = abs(c) * abs(tau.re()) + edge;
  rep.pass_d = rep.lhs_d <= rep.rhs_d;

  rep.pass = rep.pass_conic && rep.pass_ac2 && rep.pass_b && rep.pass_d;
  return rep;
}

}  // namespace unitj
