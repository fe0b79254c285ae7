#pragma once

// Klein's j-function and its first two derivatives at arbitrary precision,
// with certified absolute error bounds, plus the explicit |j| bracket near
// the order-3 elliptic point.
//
// Evaluation route: reduce tau to the fundamental domain (so |q| <=
// e^{-pi sqrt 3} ~ 0.00433), evaluate E2, E4, E6 as sigma-coefficient
// series with elementary tail majorants (sigma_k(n) <= n^{k+1}) and the
// eta product P = prod(1-q^n) by the pentagonal-number series, then
//
//   Delta = q P^24,          j = E4^3 / Delta,
//   theta j   = -E4^2 E6 / Delta,                     theta = q d/dq
//   theta^2 j = (E4^4/2 + 2/3 E4 E6^2 - 1/6 E2 E4^2 E6) / Delta
//
// using the Ramanujan identities for the theta-derivatives; dj/dtau =
// 2 pi i theta j. Writing Delta through the eta product keeps every
// formula cancellation-free: the only decaying factor is the explicit q.
//
// A separate integer q-expansion of j (series division E4^3 / Delta) acts
// as an independent oracle and carries the classical coefficients.

#include <cstddef>
#include <vector>

#include "unitj/halfplane.hpp"
#include "unitj/numeric.hpp"

namespace unitj {

struct JValue {
  Complex value;
  Real abs_err;  // certified absolute error bound
};

class QExpansion {
 public:
  // coefficients c_{-1} .. c_{order} of j(q) = q^{-1} + 744 + 196884 q + ...
  explicit QExpansion(size_t order);

  const mpz_class& coeff(long n) const;  // n >= -1
  size_t order() const { return order_; }

  // Majorant of |sum_{n > order} c_n q^n| for |q| <= e^{-pi sqrt 3}: the
  // coefficients are positive, so c_n <= j(2i) e^{pi n} = 287496 e^{pi n}
  // (evaluate the series at q = e^{-pi}), geometric with ratio e^pi |q|.
  Real tail_bound(const Real& qabs) const;

  // direct coefficient summation; requires |q| <= e^{-pi sqrt 3}
  JValue eval(const Complex& q) const;

 private:
  size_t order_;
  std::vector<mpz_class> c_;  // c_[k] = coefficient of q^{k-1}
};

// Shared expansion table, grown on demand (thread-safe).
const QExpansion& j_qexpansion(size_t order);

// j at the point's precision: certified relative error <= 2^{-prec+8}
// whenever the enclosure separates the value from zero, otherwise a
// certified absolute error <= 2^{-2 prec}. SL2(Z)-invariant by
// construction (the point is reduced first). Throws precision_exhausted
// when cancellation near the zeros of j consumes the error budget.
JValue j_eval_err(const HPoint& tau);
Complex j_eval(const HPoint& tau);

// dj/dtau and d^2 j/dtau^2 with the same accuracy contract; points below
// Im = sqrt(3)/2 are reduced and chain-ruled back through the reducing
// matrix.
JValue j_derivative_err(const HPoint& tau, int order);
Complex j_derivative(const HPoint& tau, int order);

// E4, E6 at an already-reduced point (used by the period round-trip).
struct EisensteinAtPoint {
  Complex e4, e6;
  Real e4_err, e6_err;
};
EisensteinAtPoint eisenstein_at(const HPoint& reduced);

struct JBoundReport {
  bool near_case;      // within 1e-3 of the relevant elliptic point
  bool against_zeta2;  // compared against zeta^2 (F_- side)
  Real dist;           // distance to that elliptic point
  Real jabs;           // |j(tau)|, certified midpoint
  Real jabs_err;
  Real lower, upper;   // asserted bracket (near) or floor (far, lower only)
  bool pass;
};

// Case split of the explicit bracket 44000 d^3 <= |j| <= 47000 d^3 near
// the elliptic point (d <= 1e-3) and the floor |j| >= 4.4e-5 away from
// it. Expects tau in the closed fundamental domain.
JBoundReport jbound_check(const HPoint& tau);

}  // namespace unitj
