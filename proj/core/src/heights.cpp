#include "unitj/heights.hpp"

#include <sstream>
#include <stdexcept>

#include "unitj/arith.hpp"

namespace unitj {

namespace {

// d0 = s^2 d with d squarefree; returns (d, s)
std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& d0) {
  if (d0 == 0) throw std::invalid_argument("quadratic: d must be nonzero");
  mpz_class m = ::abs(d0), d(1), s(1);
  for (const auto& [p, e] : factorize(m).factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
    s *= pe;
    if (e % 2) d *= p;
  }
  if (d0 < 0) d = -d;
  return {d, s};
}

}  // namespace

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& v) {
  AlgebraicNumber x;
  x.a_ = v;
  x.a_.canonicalize();
  x.b_ = 0;
  x.d_ = 1;
  return x;
}

AlgebraicNumber AlgebraicNumber::quadratic(const mpq_class& a, const mpq_class& b,
                                           const mpz_class& d0) {
  if (b == 0) return rational(a);
  auto [d, s] = squarefree_split(d0);
  if (d == 1) return rational(a + b * s);  // d0 was a perfect square
  AlgebraicNumber x;
  x.a_ = a;
  x.b_ = b * s;
  x.d_ = d;
  x.a_.canonicalize();
  x.b_.canonicalize();
  return x;
}

AlgebraicNumber AlgebraicNumber::from_minpoly(const mpz_class& A, const mpz_class& B,
                                              const mpz_class& C, int sign) {
  if (A == 0) {
    if (B == 0) throw std::invalid_argument("from_minpoly: degenerate polynomial");
    return rational(mpq_class(-C, B));
  }
  mpz_class disc = B * B - 4 * A * C;
  if (disc == 0) return rational(mpq_class(-B, 2 * A));
  return quadratic(mpq_class(-B, 2 * A), mpq_class(sign >= 0 ? 1 : -1, 2 * A), disc);
}

AlgebraicNumber AlgebraicNumber::conjugate() const {
  AlgebraicNumber x = *this;
  x.b_ = -x.b_;
  return x;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("AlgebraicNumber: inverse of zero");
  if (is_rational()) return rational(1 / a_);
  // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
  mpq_class n = a_ * a_ - b_ * b_ * d_;
  AlgebraicNumber x;
  x.a_ = a_ / n;
  x.b_ = -b_ / n;
  x.d_ = d_;
  x.a_.canonicalize();
  x.b_.canonicalize();
  return x;
}

void AlgebraicNumber::minpoly(mpz_class& A, mpz_class& B, mpz_class& C) const {
  if (is_rational()) {
    A = 0;
    B = a_.get_den();
    C = -a_.get_num();
    return;
  }
  // x^2 - 2a x + (a^2 - b^2 d), cleared to primitive integers
  mpq_class c1 = -2 * a_;
  mpq_class c0 = a_ * a_ - b_ * b_ * d_;
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), c1.get_den().get_mpz_t(), c0.get_den().get_mpz_t());
  A = den;
  mpq_class b1 = c1 * den, c1q = c0 * den;
  b1.canonicalize();
  c1q.canonicalize();
  B = b1.get_num();
  C = c1q.get_num();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C.get_mpz_t());
  A /= g;
  B /= g;
  C /= g;
  if (A < 0) {
    A = -A;
    B = -B;
    C = -C;
  }
}

Complex AlgebraicNumber::embed(mpfr_prec_t prec) const {
  if (prec == 0) prec = default_precision();
  PrecisionScope scope(prec);
  Real a(a_), b(b_);
  if (is_rational()) return Complex(a, Real(0L));
  Real sd = sqrt(Real(mpz_class(::abs(d_))));
  if (d_ > 0) return Complex(a + b * sd, Real(0L));
  return Complex(a, b * sd);
}

std::string AlgebraicNumber::str() const {
  std::ostringstream os;
  if (is_rational()) {
    os << a_;
  } else {
    os << a_ << (b_ >= 0 ? "+" : "") << b_ << "*sqrt(" << d_ << ")";
  }
  return os.str();
}

namespace {

void require_same_field(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  if (!x.is_rational() && !y.is_rational() && x.field_disc() != y.field_disc())
    throw FieldMismatch("operands live in different quadratic fields");
}

mpz_class field_of(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  return x.is_rational() ? y.field_disc() : x.field_disc();
}

}  // namespace

AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  require_same_field(x, y);
  return AlgebraicNumber::quadratic(x.rat_a() + y.rat_a(), x.rat_b() + y.rat_b(),
                                    field_of(x, y));
}

AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  require_same_field(x, y);
  return AlgebraicNumber::quadratic(x.rat_a() - y.rat_a(), x.rat_b() - y.rat_b(),
                                    field_of(x, y));
}

AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  require_same_field(x, y);
  mpz_class d = field_of(x, y);
  return AlgebraicNumber::quadratic(x.rat_a() * y.rat_a() + x.rat_b() * y.rat_b() * d,
                                    x.rat_a() * y.rat_b() + x.rat_b() * y.rat_a(), d);
}

Real height(const AlgebraicNumber& x) {
  mpfr_prec_t p = default_precision();
  if (x.is_rational()) {
    if (x.rat_a() == 0) return Real(0L);
    mpz_class num = ::abs(x.rat_a().get_num());
    const mpz_class& den = x.rat_a().get_den();
    return log(Real(num > den ? num : den));
  }
  mpz_class A, B, C;
  x.minpoly(A, B, C);
  // (1/2)(log A + log+ |r1| + log+ |r2|)
  PrecisionScope scope(p + 32);
  Real acc = log(Real(A));
  if (x.field_disc() < 0) {
    Real mod2 = Real(mpq_class(x.rat_a() * x.rat_a() - x.rat_b() * x.rat_b() * x.field_disc()));
    if (mod2 > 1) acc += log(mod2);  // both conjugates share this modulus^2
  } else {
    Real sd = sqrt(Real(x.field_disc()));
    Real r1 = abs(Real(x.rat_a()) + Real(x.rat_b()) * sd);
    Real r2 = abs(Real(x.rat_a()) - Real(x.rat_b()) * sd);
    if (r1 > 1) acc += log(r1);
    if (r2 > 1) acc += log(r2);
  }
  Real out(p, 0);
  mpfr_set(out.raw(), (acc / 2).raw(), MPFR_RNDN);
  return out;
}

UnitDecomposition unit_height_decomposition(const std::vector<Real>& magnitudes, long degree) {
  if (degree < 1 || magnitudes.empty())
    throw std::invalid_argument("unit_height_decomposition: need magnitudes and degree >= 1");
  Real logsum(0L), pos(0L), neg(0L);
  for (const Real& m : magnitudes) {
    if (!(m.sgn() > 0))
      throw std::invalid_argument("unit_height_decomposition: magnitudes must be positive");
    Real lm = log(m);
    logsum += lm;
    if (lm.sgn() > 0) pos += lm;
    if (lm.sgn() < 0) neg -= lm;
  }
  if (abs(logsum) > Real(1e-9))
    throw std::invalid_argument(
        "unit_height_decomposition: magnitudes do not multiply to 1 (not a unit)");
  UnitDecomposition out;
  out.positive_part = pos / degree;
  out.negative_part = neg / degree;
  out.agree = abs(out.positive_part - out.negative_part) <= Real(1e-10) * degree;
  return out;
}

HeightCheckReport height_arithmetic_checks(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  HeightCheckReport rep;
  rep.skipped = false;
  rep.h_x = height(x);
  rep.h_y = height(y);
  AlgebraicNumber diff = AlgebraicNumber::rational(0);
  try {
    diff = x - y;
  } catch (const FieldMismatch&) {
    rep.skipped = true;
    rep.pass = true;
    return rep;
  }
  rep.h_diff = height(diff);
  rep.mult_lhs = exp(rep.h_diff);
  rep.mult_rhs = 2 * exp(rep.h_x) * exp(rep.h_y);
  Real slack = pow2(-static_cast<long>(default_precision()) + 16);
  rep.pass_mult = rep.mult_lhs <= rep.mult_rhs * (1 + slack);
  rep.low_lhs = rep.h_diff;
  rep.low_rhs = rep.h_x - rep.h_y - log(Real(2L));
  rep.pass_low = rep.low_lhs >= rep.low_rhs - slack;
  rep.pass = rep.pass_mult && rep.pass_low;
  return rep;
}

}  // namespace unitj
