#include "unitj/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>

namespace unitj {

namespace {
thread_local mpfr_prec_t g_default_prec = 256;
}

mpfr_prec_t default_precision() noexcept { return g_default_prec; }

void set_default_precision(mpfr_prec_t bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  g_default_prec = bits;
}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_default_prec) {
  set_default_precision(bits);
}
PrecisionScope::~PrecisionScope() { g_default_prec = saved_; }

Real::Real() {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_zero(v_, 1);
}
Real::Real(mpfr_prec_t prec, int) {
  mpfr_init2(v_, prec >= MPFR_PREC_MIN ? prec : g_default_prec);
  mpfr_set_zero(v_, 1);
}
Real::Real(long v) {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
Real::Real(unsigned long v) {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_ui(v_, v, MPFR_RNDN);
}
Real::Real(double v) {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
Real::Real(const mpz_class& v) {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const mpq_class& v) {
  mpfr_init2(v_, g_default_prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}
Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real Real::parse(const std::string& s, mpfr_prec_t prec) {
  Real r(prec ? prec : g_default_prec, 0);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("Real::parse: bad number '" + s + "'");
  return r;
}

mpz_class Real::to_mpz_floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

namespace {
inline mpfr_prec_t pmax(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

#define UNITJ_BINOP(name, fn)                          \
  Real name(const Real& a, const Real& b) {            \
    Real r(pmax(a, b), 0);                             \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);          \
    return r;                                          \
  }
UNITJ_BINOP(operator+, mpfr_add)
UNITJ_BINOP(operator-, mpfr_sub)
UNITJ_BINOP(operator*, mpfr_mul)
UNITJ_BINOP(operator/, mpfr_div)
#undef UNITJ_BINOP

Real operator+(const Real& a, long b) {
  Real r(a.prec(), 0);
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(const Real& a, long b) {
  Real r(a.prec(), 0);
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.prec(), 0);
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.prec(), 0);
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r(a.prec(), 0);
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.prec(), 0);
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.prec(), 0);
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

int cmp(const Real& a, const Real& b) noexcept { return mpfr_cmp(a.raw(), b.raw()); }

#define UNITJ_UNFN(name, fn)        \
  Real name(const Real& a) {        \
    Real r(a.prec(), 0);            \
    fn(r.raw(), a.raw(), MPFR_RNDN);\
    return r;                       \
  }
UNITJ_UNFN(abs, mpfr_abs)
UNITJ_UNFN(sqrt, mpfr_sqrt)
UNITJ_UNFN(cbrt, mpfr_cbrt)
UNITJ_UNFN(log, mpfr_log)
UNITJ_UNFN(log1p, mpfr_log1p)
UNITJ_UNFN(exp, mpfr_exp)
UNITJ_UNFN(sin, mpfr_sin)
UNITJ_UNFN(cos, mpfr_cos)
#undef UNITJ_UNFN

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x), 0);
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r(pmax(x, y), 0);
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
Real pow(const Real& a, const Real& b) {
  Real r(pmax(a, b), 0);
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real pow(const Real& a, long n) {
  Real r(a.prec(), 0);
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
Real floor(const Real& a) {
  Real r(a.prec(), 0);
  mpfr_floor(r.raw(), a.raw());
  return r;
}
Real ceil(const Real& a) {
  Real r(a.prec(), 0);
  mpfr_ceil(r.raw(), a.raw());
  return r;
}
Real round_nearest(const Real& a) {
  Real r(a.prec(), 0);
  mpfr_round(r.raw(), a.raw());
  return r;
}
Real min(const Real& a, const Real& b) { return cmp(a, b) <= 0 ? a : b; }
Real max(const Real& a, const Real& b) { return cmp(a, b) >= 0 ? a : b; }
Real ldexp(const Real& a, long k) {
  Real r(a.prec(), 0);
  mpfr_mul_2si(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}
Real pow2(long k, mpfr_prec_t prec) {
  Real r(prec ? prec : g_default_prec, 0);
  mpfr_set_ui_2exp(r.raw(), 1, k, MPFR_RNDN);
  return r;
}

Real const_pi(mpfr_prec_t prec) {
  Real r(prec ? prec : g_default_prec, 0);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
Real const_sqrt3(mpfr_prec_t prec) {
  Real r(prec ? prec : g_default_prec, 0);
  mpfr_sqrt_ui(r.raw(), 3, MPFR_RNDN);
  return r;
}
Real const_log2(mpfr_prec_t prec) {
  Real r(prec ? prec : g_default_prec, 0);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

std::string dec_string(const Real& x, size_t digits) {
  if (!x.is_finite()) return x.raw()->_mpfr_sign < 0 ? "-inf" : (mpfr_nan_p(x.raw()) ? "nan" : "inf");
  if (x.is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, x.raw(), MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m = m.substr(1);
  }
  // strip trailing zeros of the mantissa but keep at least one digit
  size_t last = m.find_last_not_of('0');
  m = m.substr(0, std::max<size_t>(last + 1, 1));
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

mpq_class parse_rational(const std::string& in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("parse_rational: empty input");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("parse_rational: sign only");
  mpq_class q;
  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  size_t slash = s.find('/');
  size_t dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
      throw std::invalid_argument("parse_rational: bad fraction '" + in + "'");
    q = mpq_class(mpz_class(num), mpz_class(den));
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
      throw std::invalid_argument("parse_rational: bad decimal '" + in + "'");
    mpz_class den(1);
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    q = mpq_class(mpz_class(ip) * den + (fp.empty() ? mpz_class(0) : mpz_class(fp)), den);
  } else {
    if (!digits_only(s)) throw std::invalid_argument("parse_rational: bad integer '" + in + "'");
    q = mpq_class(mpz_class(s));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.norm2();
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

Complex sqrt(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return z;
  Real r = z.abs();
  if (z.re.sgn() >= 0) {
    Real t = sqrt((r + z.re) / 2);
    return {t, z.im / (t * 2)};
  }
  Real t = sqrt((r - z.re) / 2);
  if (z.im.sgn() < 0) return {-z.im / (t * 2), -t};
  return {z.im.is_zero() ? Real(0L) : z.im / (t * 2), t};
}

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s(z.im.prec(), 0), c(z.im.prec(), 0);
  mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex cbrt_principal(const Complex& z) {
  Real r = z.abs();
  if (r.is_zero()) return z;
  Real th = atan2(z.im, z.re) / 3;
  Real m = cbrt(r);
  Real s(th.prec(), 0), c(th.prec(), 0);
  mpfr_sin_cos(s.raw(), c.raw(), th.raw(), MPFR_RNDN);
  return {m * c, m * s};
}

namespace {
inline Real r_op(mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd,
                 int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
  Real r(std::max(mpfr_get_prec(a), mpfr_get_prec(b)), 0);
  fn(r.raw(), a, b, rnd);
  return r;
}
}  // namespace

Interval iv_add(const Interval& a, const Interval& b) {
  return {r_op(a.lo.raw(), b.lo.raw(), MPFR_RNDD, mpfr_add),
          r_op(a.hi.raw(), b.hi.raw(), MPFR_RNDU, mpfr_add)};
}
Interval iv_sub(const Interval& a, const Interval& b) {
  return {r_op(a.lo.raw(), b.hi.raw(), MPFR_RNDD, mpfr_sub),
          r_op(a.hi.raw(), b.lo.raw(), MPFR_RNDU, mpfr_sub)};
}
Interval iv_mul(const Interval& a, const Interval& b) {
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  Real lo = r_op(a.lo.raw(), b.lo.raw(), MPFR_RNDD, mpfr_mul);
  Real hi = r_op(a.lo.raw(), b.lo.raw(), MPFR_RNDU, mpfr_mul);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      Real d = r_op(as[i]->raw(), bs[j]->raw(), MPFR_RNDD, mpfr_mul);
      Real u = r_op(as[i]->raw(), bs[j]->raw(), MPFR_RNDU, mpfr_mul);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  return {lo, hi};
}
Interval iv_sqr(const Interval& a) {
  Real alo = abs(a.lo), ahi = abs(a.hi);
  Real big = max(alo, ahi);
  Real hi = r_op(big.raw(), big.raw(), MPFR_RNDU, mpfr_mul);
  if (a.contains_zero()) return {Real(0L), hi};
  Real small = min(alo, ahi);
  Real lo = r_op(small.raw(), small.raw(), MPFR_RNDD, mpfr_mul);
  return {lo, hi};
}
Interval iv_div(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("iv_div: denominator contains zero");
  Interval inv{r_op(Real(1L).raw(), b.hi.raw(), MPFR_RNDD, mpfr_div),
               r_op(Real(1L).raw(), b.lo.raw(), MPFR_RNDU, mpfr_div)};
  return iv_mul(a, inv);
}
Interval iv_scale(const Interval& a, const Real& c) {
  return iv_mul(a, Interval(c));
}
Interval iv_add_const(const Interval& a, const Real& c) {
  return iv_add(a, Interval(c));
}

namespace {
inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

uint64_t Rng::next_u64() {
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

int64_t Rng::next_int(int64_t lo, int64_t hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(next_u64() % span);
}

double Rng::next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

}  // namespace unitj
