#pragma once

// Arbitrary-precision numeric foundation: a value-semantics wrapper over
// MPFR reals with explicit bit precision, a complex type on top of it,
// directed-rounding intervals, and a deterministic RNG for test suites.
//
// Precision model: every Real carries its own mpfr precision; binary
// operations round to the larger operand precision (MPFR_RNDN). New values
// default to the thread-local working precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace unitj {

// Raised when an iterative routine cannot certify its result at the
// working precision (reduction loops, adaptive series evaluation, AGM).
struct precision_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mpfr_prec_t default_precision() noexcept;
void set_default_precision(mpfr_prec_t bits);

// RAII scope for temporarily raising the thread default precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t prec, int);  // zero at given precision
  Real(long v);                          // NOLINT implicit by design
  Real(int v) : Real(static_cast<long>(v)) {}
  Real(unsigned long v);
  Real(double v);
  Real(const mpz_class& v);
  Real(const mpq_class& v);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  ~Real();

  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;

  static Real with_prec(mpfr_prec_t prec) { return Real(prec, 0); }
  static Real parse(const std::string& s, mpfr_prec_t prec = 0);

  mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
  mpfr_ptr raw() noexcept { return v_; }
  mpfr_srcptr raw() const noexcept { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  mpz_class to_mpz_floor() const;
  bool fits_long() const { return mpfr_fits_slong_p(v_, MPFR_RNDN) != 0; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sgn() const noexcept { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator/(long a, const Real& b);
Real operator-(const Real& a);

int cmp(const Real& a, const Real& b) noexcept;
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

Real abs(const Real& a);
Real sqrt(const Real& a);
Real cbrt(const Real& a);
Real log(const Real& a);
Real log1p(const Real& a);
Real exp(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& a, const Real& b);
Real pow(const Real& a, long n);
Real floor(const Real& a);
Real ceil(const Real& a);
Real round_nearest(const Real& a);  // to integer, half away from zero
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real ldexp(const Real& a, long k);           // a * 2^k
Real pow2(long k, mpfr_prec_t prec = 0);     // 2^k

Real const_pi(mpfr_prec_t prec = 0);
Real const_sqrt3(mpfr_prec_t prec = 0);
Real const_log2(mpfr_prec_t prec = 0);

// Deterministic decimal rendering: "-d.ddd...e±xx" with `digits`
// significant digits, identical across runs and platforms.
std::string dec_string(const Real& x, size_t digits = 30);

// Exact rational parsing for CLI/test inputs: accepts "p/q", integers and
// finite decimals ("0.45" -> 9/20). Throws std::invalid_argument otherwise.
mpq_class parse_rational(const std::string& s);

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(long(0)) {}

  Complex conj() const { return Complex(re, -im); }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return hypot(re, im); }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator-(const Complex& a);
Complex sqrt(const Complex& z);   // principal branch
Complex exp(const Complex& z);
Complex cbrt_principal(const Complex& z);

// Closed interval [lo, hi] with outward (directed) rounding on every
// operation, used where a computation must be certified rather than
// merely accurate (segment sweeps, series tails).
struct Interval {
  Real lo, hi;

  Interval() = default;
  Interval(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit Interval(const Real& x) : lo(x), hi(x) {}

  bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
  Real width() const { return hi - lo; }
  Real mid() const { return (lo + hi) / 2; }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_sqr(const Interval& a);
Interval iv_div(const Interval& a, const Interval& b);  // requires 0 not in b
Interval iv_scale(const Interval& a, const Real& c);
Interval iv_add_const(const Interval& a, const Real& c);

// xoshiro256** with splitmix64 seeding: reproducible across platforms,
// unlike the distributions in <random>.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  uint64_t next_u64();
  // uniform in [0,1) with 53 random bits
  double next_unit();
  // uniform integer in [lo, hi] inclusive
  int64_t next_int(int64_t lo, int64_t hi);
  // uniform in [lo, hi)
  double next_range(double lo, double hi);

 private:
  uint64_t s_[4];
};

}  // namespace unitj
