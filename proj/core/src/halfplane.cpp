#include "unitj/halfplane.hpp"

#include <cmath>
#include <sstream>

namespace unitj {

namespace {

Real real_at(const mpz_class& z, mpfr_prec_t p) {
  Real r(p, 0);
  mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}
Real real_at(const mpq_class& q, mpfr_prec_t p) {
  Real r(p, 0);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

// ceil(x - 1/2) for exact rational x
mpz_class shift_of(const mpq_class& x) {
  mpz_class num = 2 * x.get_num() - x.get_den();
  mpz_class den = 2 * x.get_den();
  mpz_class t;
  mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return t;
}

struct MatAcc {
  mpz_class a{1}, b{0}, c{0}, d{1};
  void translate(const mpz_class& t) {  // left-multiply by (1,t;0,1)
    a += t * c;
    b += t * d;
  }
  void invert() {  // left-multiply by S = (0,-1;1,0)
    mpz_class na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
};

}  // namespace

HPoint::HPoint(Real re, Real im) {
  mpfr_prec_t p = std::max(re.prec(), im.prec());
  if (p < 64) throw std::invalid_argument("HPoint: precision must be at least 64 bits");
  if (!(im.sgn() > 0)) throw std::invalid_argument("HPoint: imaginary part must be positive");
  re_ = Real(p, 0);
  mpfr_set(re_.raw(), re.raw(), MPFR_RNDN);
  im_ = Real(p, 0);
  mpfr_set(im_.raw(), im.raw(), MPFR_RNDN);
}

HPoint HPoint::from_exact(const mpq_class& x, const mpq_class& y2, mpfr_prec_t prec) {
  if (prec == 0) prec = default_precision();
  if (prec < 64) throw std::invalid_argument("HPoint: precision must be at least 64 bits");
  if (y2 <= 0) throw std::invalid_argument("HPoint: Im^2 must be positive");
  HPoint p;
  p.re_ = real_at(x, prec);
  p.im_ = sqrt(real_at(y2, prec));
  p.shadow_ = QuadShadow{x, y2};
  return p;
}

HPoint HPoint::from_rational(const mpq_class& x, const mpq_class& y, mpfr_prec_t prec) {
  if (y <= 0) throw std::invalid_argument("HPoint: imaginary part must be positive");
  return from_exact(x, y * y, prec);
}

UnimodularMatrix::UnimodularMatrix() : a_(1), b_(0), c_(0), d_(1) {}

UnimodularMatrix::UnimodularMatrix(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1)
    throw std::invalid_argument("UnimodularMatrix: determinant must be exactly 1");
}

UnimodularMatrix UnimodularMatrix::S() { return UnimodularMatrix(0, -1, 1, 0); }
UnimodularMatrix UnimodularMatrix::T(const mpz_class& t) { return UnimodularMatrix(1, t, 0, 1); }

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  return UnimodularMatrix(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                          c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  return UnimodularMatrix(d_, -b_, -c_, a_);
}

bool UnimodularMatrix::is_identity() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
}

bool UnimodularMatrix::operator==(const UnimodularMatrix& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

mpz_class UnimodularMatrix::height_z() const {
  mpz_class h = ::abs(a_);
  for (const mpz_class* e : {&b_, &c_, &d_}) {
    mpz_class v = ::abs(*e);
    if (v > h) h = v;
  }
  return h;
}

std::string UnimodularMatrix::str() const {
  std::ostringstream os;
  os << "(" << a_ << "," << b_ << ";" << c_ << "," << d_ << ")";
  return os.str();
}

HPoint apply(const UnimodularMatrix& g, const HPoint& tau) {
  mpfr_prec_t p = tau.prec();
  if (tau.shadow()) {
    const QuadShadow& sh = *tau.shadow();
    mpq_class a(g.a()), b(g.b()), c(g.c()), d(g.d());
    mpq_class cv = c * sh.x + d;
    mpq_class n = cv * cv + c * c * sh.y2;
    mpq_class x2 = ((a * sh.x + b) * cv + a * c * sh.y2) / n;
    mpq_class y22 = sh.y2 / (n * n);
    return HPoint::from_exact(x2, y22, p);
  }
  Real az = real_at(g.a(), p), bz = real_at(g.b(), p);
  Real cz = real_at(g.c(), p), dz = real_at(g.d(), p);
  Real u = az * tau.re() + bz;
  Real v = cz * tau.re() + dz;
  Real cy = cz * tau.im();
  Real den = v * v + cy * cy;
  // Im(g tau) = Im(tau)/|c tau + d|^2; computing it this way keeps the sign.
  Real re = (u * v + az * cz * tau.im() * tau.im()) / den;
  Real im = tau.im() / den;
  return HPoint(re, im);
}

namespace {

ReduceResult reduce_exact(const HPoint& tau) {
  const QuadShadow& sh = *tau.shadow();
  mpq_class x = sh.x, y2 = sh.y2;
  MatAcc m;
  long cap = 10 * static_cast<long>(tau.prec());
  bool done = false;
  for (long it = 0; it < cap; ++it) {
    mpz_class t = shift_of(x);
    if (t != 0) {
      x -= mpq_class(t);
      m.translate(-t);
    }
    mpq_class n2 = x * x + y2;
    if (n2 >= 1) {
      done = true;
      break;
    }
    x = -x / n2;
    y2 /= n2 * n2;
    m.invert();
  }
  if (!done) throw precision_exhausted("reduce: iteration cap exceeded (exact path)");
  mpq_class n2 = x * x + y2;
  if (n2 == 1 && x < 0) {
    m.invert();
    x = -x;
  }
  if (x == mpq_class(-1, 2)) {
    m.translate(1);
    x += 1;
  }
  UnimodularMatrix g(m.a, m.b, m.c, m.d);
  return {apply(g, tau), g};
}

ReduceResult reduce_float(const HPoint& tau) {
  mpfr_prec_t p = tau.prec();
  Real tol = pow2(8 - static_cast<long>(p), p);
  Real x = tau.re(), y = tau.im();
  MatAcc m;
  long cap = 10 * static_cast<long>(p);
  bool done = false;
  for (long it = 0; it < cap; ++it) {
    Real xm = x - real_at(mpq_class(1, 2), p);
    mpz_class t;
    mpfr_get_z(t.get_mpz_t(), xm.raw(), MPFR_RNDU);
    if (t != 0) {
      x -= real_at(t, p);
      m.translate(-t);
    }
    Real n2 = x * x + y * y;
    if (n2 >= 1 - tol) {
      done = true;
      break;
    }
    x = -x / n2;
    y = y / n2;
    m.invert();
  }
  if (!done) throw precision_exhausted("reduce: iteration cap exceeded");
  Real n2 = x * x + y * y;
  if (abs(n2 - 1) <= tol && x.sgn() < 0) {
    m.invert();
    x = -x;
  }
  if (abs(x + real_at(mpq_class(1, 2), p)) <= tol) {
    m.translate(1);
    x += 1;
  }
  UnimodularMatrix g(m.a, m.b, m.c, m.d);
  HPoint out = apply(g, tau);
  Real slack = tol * 4;
  Real out_n2 = out.re() * out.re() + out.im() * out.im();
  if (abs(out.re()) > real_at(mpq_class(1, 2), p) + slack || out_n2 < 1 - slack)
    throw precision_exhausted("reduce: boundary membership undecidable at working precision");
  return {out, g};
}

}  // namespace

ReduceResult reduce(const HPoint& tau) {
  if (tau.shadow()) return reduce_exact(tau);
  return reduce_float(tau);
}

Real dmeasure(const HPoint& tau) {
  Real one(1L);
  return max(one, max(abs(tau.re()), 1L / tau.im()));
}

Real matrix_height(const UnimodularMatrix& g) { return Real(g.height_z()); }

namespace {
bool is_zeta_rep(const HPoint& reduced) {
  if (reduced.shadow()) {
    const QuadShadow& sh = *reduced.shadow();
    return sh.x == mpq_class(1, 2) && sh.y2 == mpq_class(3, 4);
  }
  mpfr_prec_t p = reduced.prec();
  Real t = pow2(-static_cast<long>(p) / 2, p);
  Real half = real_at(mpq_class(1, 2), p);
  return abs(reduced.re() - half) <= t &&
         abs(reduced.im() - const_sqrt3(p) / 2) <= t;
}
}  // namespace

ReductionHeightReport check_reduction_height(const HPoint& tau) {
  ReduceResult rr = reduce(tau);
  Real D = dmeasure(tau);
  Real H = matrix_height(rr.matrix);
  bool zorb = is_zeta_rep(rr.point);
  Real bound = Real(zorb ? 1056L : 264L) * pow(D, 9L);
  return {H, bound, D, zorb, H <= bound};
}

FundamentalDomainTag classify(const HPoint& reduced) {
  bool on_edge = false, on_circle = false, plus;
  if (reduced.shadow()) {
    const QuadShadow& sh = *reduced.shadow();
    mpq_class ax = ::abs(sh.x);
    on_edge = ax == mpq_class(1, 2);
    on_circle = sh.x * sh.x + sh.y2 == 1;
    plus = sh.x >= 0;
  } else {
    mpfr_prec_t p = reduced.prec();
    Real tol = pow2(8 - static_cast<long>(p), p);
    Real half = real_at(mpq_class(1, 2), p);
    on_edge = abs(abs(reduced.re()) - half) <= tol;
    Real n2 = reduced.re() * reduced.re() + reduced.im() * reduced.im();
    on_circle = abs(n2 - 1) <= tol;
    plus = reduced.re().sgn() >= 0;
  }
  FundamentalDomainTag tag;
  tag.plus_half = plus;
  if (on_edge || on_circle)
    tag.region = plus ? FundamentalDomainTag::Region::plus_boundary
                      : FundamentalDomainTag::Region::minus_boundary;
  else
    tag.region = FundamentalDomainTag::Region::interior;
  return tag;
}

HPoint zeta_point(mpfr_prec_t prec) {
  return HPoint::from_exact(mpq_class(1, 2), mpq_class(3, 4), prec);
}
HPoint zeta2_point(mpfr_prec_t prec) {
  return HPoint::from_exact(mpq_class(-1, 2), mpq_class(3, 4), prec);
}

int sign_p_minus_s_sqrt_t(const mpq_class& p, const mpq_class& s, const mpq_class& t) {
  if (t < 0) throw std::domain_error("sign_p_minus_s_sqrt_t: t < 0");
  if (s == 0 || t == 0) return sgn(p);
  if (s > 0) {
    if (p <= 0) return -1;
    return sgn(p * p - s * s * t);
  }
  // p + |s| sqrt(t)
  if (p >= 0) return 1;
  return sgn(s * s * t - p * p);
}

bool mpq_perfect_square(const mpq_class& q, mpq_class& root) {
  if (q < 0) return false;
  if (q == 0) {
    root = 0;
    return true;
  }
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn, rd);
  return true;
}

namespace fastred {

bool reduce_fast(double x0, double y0, Mat64& gamma, double& xr, double& yr,
                 double margin) {
  if (!(y0 > 0) || !std::isfinite(x0) || !std::isfinite(y0)) return false;
  if (std::fabs(x0) > 1e6 || y0 > 1e6) return false;
  const int64_t ENTRY_CAP = int64_t(1) << 26;
  double x = x0, y = y0;
  int64_t a = 1, b = 0, c = 0, d = 1;
  bool done = false;
  for (int it = 0; it < 256; ++it) {
    double tf = std::ceil(x - 0.5);
    if (std::fabs(tf) > 4e9) return false;
    int64_t t = static_cast<int64_t>(tf);
    if (t != 0) {
      x -= tf;
      a -= t * c;
      b -= t * d;
      if (std::llabs(a) > ENTRY_CAP || std::llabs(b) > ENTRY_CAP) return false;
    }
    double n2 = x * x + y * y;
    if (n2 >= 1.0) {
      done = true;
      break;
    }
    x = -x / n2;
    y = y / n2;
    int64_t na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
    if (std::llabs(a) > ENTRY_CAP || std::llabs(b) > ENTRY_CAP) return false;
  }
  if (!done) return false;
  if (a * d - b * c != 1) return false;
  // one clean application to the original point
  double u = static_cast<double>(a) * x0 + static_cast<double>(b);
  double v = static_cast<double>(c) * x0 + static_cast<double>(d);
  double den = v * v + static_cast<double>(c) * static_cast<double>(c) * y0 * y0;
  if (!(den > 0)) return false;
  xr = (u * v + static_cast<double>(a) * static_cast<double>(c) * y0 * y0) / den;
  yr = y0 / den;
  double n2r = xr * xr + yr * yr;
  // refuse anything near a boundary: the exact path owns the tie-breaks
  if (std::fabs(std::fabs(xr) - 0.5) < margin) return false;
  if (std::fabs(n2r - 1.0) < 2 * margin) return false;
  if (std::fabs(xr) > 0.5 || n2r < 1.0) return false;
  gamma = Mat64{a, b, c, d};
  return true;
}

}  // namespace fastred

}  // namespace unitj
