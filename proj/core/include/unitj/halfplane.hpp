#pragma once

// Upper half-plane points, the SL2(Z) action, reduction to the standard
// fundamental domain F = {|Re| <= 1/2, |tau| >= 1}, the D(z) measure and
// matrix heights.
//
// Reduction is deterministic: representatives take Re in [-1/2, 1/2] with
// Re = +1/2 preferred on the vertical edges and Re >= 0 preferred on the
// unit-circle arc. Points constructed from exact rational data carry a
// "shadow" (Re in Q, Im^2 in Q — a class closed under the SL2(Z) action),
// so boundary decisions for rational and imaginary-quadratic inputs are
// exact; other points use a 2^(8-prec) comparison tolerance.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "unitj/numeric.hpp"

namespace unitj {

struct QuadShadow {
  mpq_class x;   // Re
  mpq_class y2;  // Im^2 > 0
};

class HPoint {
 public:
  HPoint(Real re, Real im);
  static HPoint from_exact(const mpq_class& x, const mpq_class& y2, mpfr_prec_t prec = 0);
  static HPoint from_rational(const mpq_class& x, const mpq_class& y, mpfr_prec_t prec = 0);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  mpfr_prec_t prec() const { return re_.prec(); }
  const std::optional<QuadShadow>& shadow() const { return shadow_; }

  Complex to_complex() const { return Complex(re_, im_); }
  Real abs() const { return hypot(re_, im_); }
  Real dist(const HPoint& o) const { return hypot(re_ - o.re_, im_ - o.im_); }

 private:
  HPoint() = default;
  Real re_, im_;
  std::optional<QuadShadow> shadow_;
};

class UnimodularMatrix {
 public:
  UnimodularMatrix();  // identity
  UnimodularMatrix(mpz_class a, mpz_class b, mpz_class c, mpz_class d);
  static UnimodularMatrix identity() { return UnimodularMatrix(); }
  static UnimodularMatrix S();                     // (0,-1;1,0)
  static UnimodularMatrix T(const mpz_class& t);   // (1,t;0,1)

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }

  UnimodularMatrix operator*(const UnimodularMatrix& o) const;
  UnimodularMatrix inverse() const;
  bool is_identity() const;
  bool operator==(const UnimodularMatrix& o) const;
  mpz_class height_z() const;  // max |entry|
  std::string str() const;

 private:
  mpz_class a_, b_, c_, d_;
};

struct FundamentalDomainTag {
  enum class Region { interior, plus_boundary, minus_boundary };
  Region region;
  bool plus_half;  // 0 <= Re(tau), with Re = 0 counting as plus
};

struct ReduceResult {
  HPoint point;
  UnimodularMatrix matrix;
};

struct ReductionHeightReport {
  Real height;       // H(rho)
  Real bound;        // 264 D(z)^9, or 1056 D(z)^9 in the zeta orbit
  Real dmeasure;
  bool zeta_orbit;
  bool pass;
};

// Fractional linear action (a tau + b)/(c tau + d); propagates the shadow.
HPoint apply(const UnimodularMatrix& g, const HPoint& tau);

// Canonical representative in the closed fundamental domain together with
// the reducing matrix; apply(result.matrix, tau) == result.point bit for
// bit. Throws precision_exhausted past 10*prec iterations.
ReduceResult reduce(const HPoint& tau);

// D(z) = max{1, |Re z|, 1/Im z}
Real dmeasure(const HPoint& tau);

// Multiplicative height of g as a point of Q^4 (entries are coprime since
// det = 1): max |entry|.
Real matrix_height(const UnimodularMatrix& g);

// Checks H(rho) <= 264 D(tau)^9 (1056 D(tau)^9 in the zeta orbit) for the
// canonical reducing matrix rho.
ReductionHeightReport check_reduction_height(const HPoint& tau);

// Classification of an already-reduced point.
FundamentalDomainTag classify(const HPoint& reduced);

// zeta = e^{2 pi i/6} and zeta^2, as exact points.
HPoint zeta_point(mpfr_prec_t prec = 0);
HPoint zeta2_point(mpfr_prec_t prec = 0);

// Exact sign of p - s*sqrt(t) for rationals p, s and t >= 0.
int sign_p_minus_s_sqrt_t(const mpq_class& p, const mpq_class& s, const mpq_class& t);
// If q is the square of a rational, store it in root and return true.
bool mpq_perfect_square(const mpq_class& q, mpq_class& root);

namespace fastred {

struct Mat64 {
  int64_t a, b, c, d;
};

// Gauss reduction in double/int64 arithmetic. Returns false when entries
// might overflow, the iteration does not settle, or the result is within
// `margin` of a fundamental-domain boundary (caller then takes the exact
// path). On success gamma is the canonical reducing matrix and (xr, yr)
// the reduced point recomputed from the inputs in one application.
bool reduce_fast(double x, double y, Mat64& gamma, double& xr, double& yr,
                 double margin);

}  // namespace fastred

}  // namespace unitj
