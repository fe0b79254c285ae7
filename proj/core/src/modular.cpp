#include "unitj/modular.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

// Error accounting: every evaluated quantity carries a certified absolute
// error bound. Truncation tails are majorized rigorously (see below); the
// MPFR rounding of the O(K) series operations is covered by adding
// 2^{-pwork+12} * (|value|+1) per composite value, orders of magnitude
// above the true accumulated rounding at the chosen guard precision.

namespace unitj {

namespace {

constexpr long kGuardBits = 64;

struct SigmaTables {
  std::vector<mpz_class> s1, s3, s5;  // 1-based: s*[n] = sigma_*(n)
};

const SigmaTables& sigma_tables(size_t K) {
  static std::mutex mu;
  static SigmaTables tab;
  std::lock_guard<std::mutex> lock(mu);
  size_t have = tab.s1.empty() ? 0 : tab.s1.size() - 1;
  if (K > have) {
    size_t newK = std::max(K, have * 2);
    tab.s1.assign(newK + 1, 0);
    tab.s3.assign(newK + 1, 0);
    tab.s5.assign(newK + 1, 0);
    for (size_t d = 1; d <= newK; ++d) {
      mpz_class d1(static_cast<unsigned long>(d));
      mpz_class d3 = d1 * d1 * d1;
      mpz_class d5 = d3 * d1 * d1;
      for (size_t m = d; m <= newK; m += d) {
        tab.s1[m] += d1;
        tab.s3[m] += d3;
        tab.s5[m] += d5;
      }
    }
  }
  return tab;
}

size_t series_order(mpfr_prec_t pwork) {
  return static_cast<size_t>((static_cast<double>(pwork) + 24.0) * 0.69315 / 5.441) + 9;
}

Real rounding_slack(const Real& scale, mpfr_prec_t pwork) {
  return ldexp(abs(scale) + 1, 12 - static_cast<long>(pwork));
}

// sum_{n>K} n^j x^n <= (K+1)^j x^{K+1} / (1 - x e^{j/(K+1)}), valid while
// x e^{j/(K+1)} < 1 (uses (1+m/(K+1))^j <= e^{jm/(K+1)}).
Real poly_tail(size_t K, long jpow, const Real& x, mpfr_prec_t pwork) {
  Real kp1(static_cast<long>(K + 1));
  Real ratio = x * exp(Real(jpow) / kp1);
  if (!(ratio < 1)) throw precision_exhausted("series tail majorant inapplicable");
  return pow(kp1, jpow) * pow(x, static_cast<long>(K + 1)) / (1 - ratio);
}

struct EisBundle {
  mpfr_prec_t pwork;
  Complex q;
  Real qabs;      // |q| upper bound (includes its own rounding slack)
  Real q_relerr;  // certified relative error of q
  Complex e2, e4, e6, pval;
  Real e2_err, e4_err, e6_err, p_err;  // absolute
};

// sum_{n=1..K} coef[n] q^n
Complex sigma_sum(const std::vector<mpz_class>& coef, size_t K, const Complex& q,
                  mpfr_prec_t pwork) {
  Complex acc(Real(pwork, 0), Real(pwork, 0));
  Complex qn(Real(1L), Real(0L));
  for (size_t n = 1; n <= K; ++n) {
    qn = qn * q;
    Real c(pwork, 0);
    mpfr_set_z(c.raw(), coef[n].get_mpz_t(), MPFR_RNDN);
    acc = acc + c * qn;
  }
  return acc;
}

EisBundle eval_eisenstein(const HPoint& red, mpfr_prec_t pwork) {
  PrecisionScope scope(pwork);
  EisBundle B;
  B.pwork = pwork;

  // q = exp(2 pi i tau with tau reduced): relative error dominated by the
  // phase error |2 pi tau| * rounding
  Real two_pi = const_pi(pwork) * 2;
  Real re(pwork, 0), im(pwork, 0);
  mpfr_set(re.raw(), red.re().raw(), MPFR_RNDN);
  mpfr_set(im.raw(), red.im().raw(), MPFR_RNDN);
  Complex z(-(two_pi * im), two_pi * re);  // 2 pi i tau
  B.q = exp(z);
  Real zscale = max(Real(1L), abs(z.re) + abs(z.im));
  B.q_relerr = ldexp(zscale, 8 - static_cast<long>(pwork));
  B.qabs = B.q.abs() * (1 + B.q_relerr);

  size_t K = series_order(pwork);
  const SigmaTables& tab = sigma_tables(K);

  Complex s1 = sigma_sum(tab.s1, K, B.q, pwork);
  Complex s3 = sigma_sum(tab.s3, K, B.q, pwork);
  Complex s5 = sigma_sum(tab.s5, K, B.q, pwork);

  B.e2 = Complex(Real(1L)) - Real(24L) * s1;
  B.e4 = Complex(Real(1L)) + Real(240L) * s3;
  B.e6 = Complex(Real(1L)) - Real(504L) * s5;
  // sigma_k(n) <= n^{k+1}
  B.e2_err = 24 * poly_tail(K, 2, B.qabs, pwork) + rounding_slack(B.e2.abs(), pwork);
  B.e4_err = 240 * poly_tail(K, 4, B.qabs, pwork) + rounding_slack(B.e4.abs(), pwork);
  B.e6_err = 504 * poly_tail(K, 6, B.qabs, pwork) + rounding_slack(B.e6.abs(), pwork);

  // P = prod(1 - q^n) by the pentagonal series; exponents beyond K
  // contribute at most the geometric tail below
  Complex P(Real(1L), Real(0L));
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 > static_cast<long>(K)) break;
    Complex t1(Real(1L), Real(0L));
    {
      Complex base = B.q;
      long e = g1;
      Complex acc(Real(1L), Real(0L));
      while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
      }
      t1 = acc;
    }
    if (k % 2 == 1) t1 = -t1;
    P = P + t1;
    if (g2 <= static_cast<long>(K)) {
      Complex base = B.q;
      long e = g2;
      Complex acc(Real(1L), Real(0L));
      while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
      }
      if (k % 2 == 1) acc = -acc;
      P = P + acc;
    }
  }
  B.pval = P;
  B.p_err = 2 * pow(B.qabs, static_cast<long>(K + 1)) / (1 - B.qabs) +
            rounding_slack(P.abs(), pwork);
  return B;
}

struct ValErr {
  Complex v;
  Real e;  // absolute
};

ValErr ve_mul(const ValErr& a, const ValErr& b, mpfr_prec_t pwork) {
  Complex v = a.v * b.v;
  Real e = a.v.abs() * b.e + b.v.abs() * a.e + a.e * b.e + rounding_slack(v.abs(), pwork);
  return {v, e};
}
ValErr ve_div(const ValErr& a, const ValErr& b, mpfr_prec_t pwork) {
  Real babs = b.v.abs();
  if (!(b.e < babs)) throw precision_exhausted("division by an enclosure containing zero");
  Complex v = a.v / b.v;
  Real low = babs - b.e;
  Real e = (a.e + v.abs() * b.e) / low + rounding_slack(v.abs(), pwork);
  return {v, e};
}
ValErr ve_add(const ValErr& a, const ValErr& b, mpfr_prec_t pwork) {
  Complex v = a.v + b.v;
  return {v, a.e + b.e + rounding_slack(v.abs(), pwork)};
}
ValErr ve_scale(const ValErr& a, const Real& c) { return {c * a.v, abs(c) * a.e}; }

// Delta = q P^24 and its error
ValErr delta_of(const EisBundle& B) {
  ValErr P{B.pval, B.p_err};
  ValErr acc = P;
  for (int i = 0; i < 4; ++i) acc = ve_mul(acc, acc, B.pwork);  // P^16
  ValErr p8 = ve_mul(ve_mul(P, P, B.pwork), ve_mul(P, P, B.pwork), B.pwork);
  p8 = ve_mul(p8, p8, B.pwork);  // P^8
  ValErr p24 = ve_mul(acc, p8, B.pwork);
  ValErr q{B.q, B.q.abs() * B.q_relerr};
  return ve_mul(q, p24, B.pwork);
}

ValErr j_from_bundle(const EisBundle& B) {
  ValErr e4{B.e4, B.e4_err};
  ValErr e43 = ve_mul(ve_mul(e4, e4, B.pwork), e4, B.pwork);
  return ve_div(e43, delta_of(B), B.pwork);
}

ValErr theta_j_from_bundle(const EisBundle& B) {
  ValErr e4{B.e4, B.e4_err}, e6{B.e6, B.e6_err};
  ValErr num = ve_mul(ve_mul(e4, e4, B.pwork), e6, B.pwork);
  ValErr r = ve_div(num, delta_of(B), B.pwork);
  return {-r.v, r.e};
}

ValErr theta2_j_from_bundle(const EisBundle& B) {
  mpfr_prec_t p = B.pwork;
  ValErr e2{B.e2, B.e2_err}, e4{B.e4, B.e4_err}, e6{B.e6, B.e6_err};
  ValErr e4sq = ve_mul(e4, e4, p);
  ValErr t1 = ve_scale(ve_mul(e4sq, e4sq, p), Real(mpq_class(1, 2)));
  ValErr t2 = ve_scale(ve_mul(e4, ve_mul(e6, e6, p), p), Real(mpq_class(2, 3)));
  ValErr t3 = ve_scale(ve_mul(e2, ve_mul(e4sq, e6, p), p), Real(mpq_class(-1, 6)));
  ValErr num = ve_add(ve_add(t1, t2, p), t3, p);
  return ve_div(num, delta_of(B), p);
}

bool is_exact_zeta(const HPoint& red) {
  return red.shadow() && red.shadow()->x == mpq_class(1, 2) &&
         red.shadow()->y2 == mpq_class(3, 4);
}

Complex round_to(const Complex& z, mpfr_prec_t p) {
  Real re(p, 0), im(p, 0);
  mpfr_set(re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(im.raw(), z.im.raw(), MPFR_RNDN);
  return {re, im};
}

// Adaptive evaluation: raise the working precision until the enclosure is
// relatively tight or absolutely below 2^{-2 prec}.
template <typename F>
JValue adaptive_eval(mpfr_prec_t prec, F&& eval_at) {
  Real rel_target = pow2(-static_cast<long>(prec) - 16, prec + 32);
  Real abs_floor = pow2(-2 * static_cast<long>(prec), prec + 32);
  mpfr_prec_t pwork = prec + kGuardBits;
  mpfr_prec_t cap = 40 * prec + 4096;
  for (;;) {
    ValErr r;
    bool ok = true;
    try {
      r = eval_at(pwork);
    } catch (const precision_exhausted&) {
      ok = false;
    }
    if (ok && (r.e <= r.v.abs() * rel_target || r.e <= abs_floor))
      return {round_to(r.v, prec), r.e};
    if (pwork > cap)
      throw precision_exhausted("j evaluation: error budget exhausted near a zero of j");
    pwork = pwork * 2;
  }
}

HPoint at_prec(const HPoint& x, mpfr_prec_t p) {
  if (x.shadow()) return HPoint::from_exact(x.shadow()->x, x.shadow()->y2, p);
  Real re(p, 0), im(p, 0);
  mpfr_set(re.raw(), x.re().raw(), MPFR_RNDN);
  mpfr_set(im.raw(), x.im().raw(), MPFR_RNDN);
  return HPoint(re, im);
}

}  // namespace

QExpansion::QExpansion(size_t order) : order_(order) {
  // E4^3 and Delta/q as integer series, then the division recurrence
  size_t K = order + 2;
  const SigmaTables& tab = sigma_tables(K);
  std::vector<mpz_class> e4(K + 1, 0);
  e4[0] = 1;
  for (size_t n = 1; n <= K; ++n) e4[n] = 240 * tab.s3[n];
  auto mul_trunc = [K](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> c(K + 1, 0);
    for (size_t i = 0; i <= K; ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; i + j <= K; ++j)
        if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  std::vector<mpz_class> e43 = mul_trunc(mul_trunc(e4, e4), e4);

  // Delta/q = P^24, P from the pentagonal series
  std::vector<mpz_class> P(K + 1, 0);
  P[0] = 1;
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 > static_cast<long>(K)) break;
    long s = (k % 2 == 1) ? -1 : 1;
    P[g1] += s;
    if (g2 <= static_cast<long>(K)) P[g2] += s;
  }
  std::vector<mpz_class> D = P;
  for (int i = 0; i < 2; ++i) D = mul_trunc(D, D);      // P^4
  std::vector<mpz_class> D8 = mul_trunc(D, D);          // P^8
  std::vector<mpz_class> D16 = mul_trunc(D8, D8);       // P^16
  D = mul_trunc(D16, D8);                               // P^24

  // F := E4^3 / (Delta/q); j = q^{-1} F, so c_{n} = F_{n+1}
  std::vector<mpz_class> F(K + 1, 0);
  for (size_t n = 0; n <= K; ++n) {
    mpz_class acc = e43[n];
    for (size_t k = 1; k <= n; ++k)
      if (D[k] != 0) acc -= D[k] * F[n - k];
    F[n] = acc;  // D[0] = 1
  }
  c_.assign(F.begin(), F.begin() + order + 2);
  if (c_[0] != 1 || c_[1] != 744)
    throw std::logic_error("QExpansion: leading coefficients are wrong");
  for (const mpz_class& c : c_)
    if (c <= 0) throw std::logic_error("QExpansion: expected positive coefficients");
}

const mpz_class& QExpansion::coeff(long n) const {
  if (n < -1 || n > static_cast<long>(order_))
    throw std::out_of_range("QExpansion::coeff");
  return c_[static_cast<size_t>(n + 1)];
}

Real QExpansion::tail_bound(const Real& qabs) const {
  mpfr_prec_t p = std::max<mpfr_prec_t>(qabs.prec(), 64);
  Real epi = exp(const_pi(p));
  Real r = epi * qabs;
  if (!(r < 1)) throw std::domain_error("QExpansion::tail_bound: |q| too large");
  return Real(287496L) * pow(r, static_cast<long>(order_ + 1)) / (1 - r);
}

JValue QExpansion::eval(const Complex& q) const {
  mpfr_prec_t p = std::max(q.re.prec(), q.im.prec());
  PrecisionScope scope(p);
  Complex acc = Complex(Real(1L)) / q;
  Complex qn(Real(1L), Real(0L));
  for (long n = 0; n <= static_cast<long>(order_); ++n) {
    Real c(p, 0);
    mpfr_set_z(c.raw(), coeff(n).get_mpz_t(), MPFR_RNDN);
    acc = acc + c * qn;
    qn = qn * q;
  }
  Real err = tail_bound(q.abs()) + rounding_slack(acc.abs(), p);
  return {acc, err};
}

const QExpansion& j_qexpansion(size_t order) {
  static std::mutex mu;
  static QExpansion* tab = nullptr;
  std::lock_guard<std::mutex> lock(mu);
  if (!tab || tab->order() < order) {
    QExpansion* bigger = new QExpansion(std::max(order, tab ? tab->order() * 2 : order));
    delete tab;
    tab = bigger;
  }
  return *tab;
}

JValue j_eval_err(const HPoint& tau) {
  mpfr_prec_t prec = tau.prec();
  ReduceResult rr = reduce(at_prec(tau, prec + kGuardBits));
  if (is_exact_zeta(rr.point))
    return {Complex(Real(prec, 0), Real(prec, 0)), pow2(-2 * static_cast<long>(prec))};
  return adaptive_eval(prec, [&](mpfr_prec_t pwork) {
    HPoint red = at_prec(rr.point, pwork);
    return j_from_bundle(eval_eisenstein(red, pwork));
  });
}

Complex j_eval(const HPoint& tau) { return j_eval_err(tau).value; }

JValue j_derivative_err(const HPoint& tau, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("j_derivative: order must be 1 or 2");
  mpfr_prec_t prec = tau.prec();
  ReduceResult rr = reduce(at_prec(tau, prec + kGuardBits));
  const UnimodularMatrix& g = rr.matrix;
  return adaptive_eval(prec, [&](mpfr_prec_t pwork) -> ValErr {
    PrecisionScope scope(pwork);
    HPoint red = at_prec(rr.point, pwork);
    EisBundle B = eval_eisenstein(red, pwork);
    Real two_pi = const_pi(pwork) * 2;
    Complex i2pi(Real(0L), two_pi);
    ValErr tj = theta_j_from_bundle(B);
    ValErr jp = {i2pi * tj.v, two_pi * tj.e};  // dj/dtau at the reduced point
    // chain rule through tau_red = g tau: d(g tau)/dtau = (c tau + d)^{-2}
    HPoint t = at_prec(tau, pwork);
    Real cc(pwork, 0), dd(pwork, 0);
    mpfr_set_z(cc.raw(), g.c().get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(dd.raw(), g.d().get_mpz_t(), MPFR_RNDN);
    Complex w(cc * t.re() + dd, cc * t.im());  // c tau + d
    ValErr wv{w, rounding_slack(w.abs(), pwork)};
    ValErr w2 = ve_mul(wv, wv, pwork);
    if (order == 1) return ve_div(jp, w2, pwork);
    ValErr t2j = theta2_j_from_bundle(B);
    Real fourpi2 = two_pi * two_pi;
    // j'' = (2 pi i)^2 theta^2 j = -4 pi^2 theta^2 j
    ValErr jpp{Complex(-(fourpi2 * t2j.v.re), -(fourpi2 * t2j.v.im)), fourpi2 * t2j.e};
    ValErr w4 = ve_mul(w2, w2, pwork);
    ValErr term1 = ve_div(jpp, w4, pwork);
    ValErr w3 = ve_mul(w2, wv, pwork);
    ValErr term2 = ve_div(ve_scale(jp, cc * (-2)), w3, pwork);
    return ve_add(term1, term2, pwork);
  });
}

Complex j_derivative(const HPoint& tau, int order) { return j_derivative_err(tau, order).value; }

EisensteinAtPoint eisenstein_at(const HPoint& reduced) {
  mpfr_prec_t prec = reduced.prec();
  EisBundle B = eval_eisenstein(at_prec(reduced, prec + kGuardBits), prec + kGuardBits);
  EisensteinAtPoint out;
  out.e4 = round_to(B.e4, prec);
  out.e6 = round_to(B.e6, prec);
  out.e4_err = B.e4_err;
  out.e6_err = B.e6_err;
  return out;
}

JBoundReport jbound_check(const HPoint& tau) {
  mpfr_prec_t prec = tau.prec();
  PrecisionScope scope(prec);
  Real half(mpq_class(1, 2));
  Real n2 = tau.re() * tau.re() + tau.im() * tau.im();
  Real tol = pow2(4 - static_cast<long>(prec), prec);
  if (abs(tau.re()) > half + tol || n2 < 1 - tol)
    throw std::invalid_argument("jbound_check: point must lie in the closed fundamental domain");

  JBoundReport rep;
  rep.against_zeta2 = tau.re().sgn() < 0;
  HPoint zp = rep.against_zeta2 ? zeta2_point(prec) : zeta_point(prec);
  rep.dist = tau.dist(zp);
  Real close(mpq_class(1, 1000));
  rep.near_case = rep.dist <= close;

  // the cubic bracket resolves |j| ~ 44000 d^3: certify at a precision
  // that can see d^3
  mpfr_prec_t pneed = prec;
  if (rep.near_case && rep.dist.sgn() > 0) {
    long e = mpfr_get_exp(rep.dist.raw());  // dist < 2^e
    if (e < 0) pneed = prec + 3 * static_cast<mpfr_prec_t>(-e) + kGuardBits;
  }
  JValue jv = j_eval_err(at_prec(tau, pneed));
  rep.jabs = jv.value.abs();
  rep.jabs_err = jv.abs_err;

  if (rep.near_case) {
    Real d3 = pow(rep.dist, 3L);
    rep.lower = Real(44000L) * d3;
    rep.upper = Real(47000L) * d3;
    rep.pass = (rep.jabs - rep.jabs_err >= rep.lower) && (rep.jabs + rep.jabs_err <= rep.upper);
  } else {
    rep.lower = Real(4.4e-5);
    rep.upper = Real(0L);
    rep.pass = rep.jabs - rep.jabs_err >= rep.lower;
  }
  return rep;
}

}  // namespace unitj
