#pragma once

// Lattice-point machinery: quadratic-form ellipses A a^2 + B ac + C c^2,
// exact integer-point counts, the Davenport inequality |N - V| < 4(L+1),
// elliptical-annulus enumeration, and the segment count M(xi; x; y; eps) of
// reducing matrices, both as a closed-form bound and as a certified
// brute-force sweep.

#include <cstdint>
#include <vector>

#include "unitj/halfplane.hpp"
#include "unitj/numeric.hpp"

namespace unitj {

class Ellipse {
 public:
  Ellipse(Real A, Real B, Real C);
  const Real& A() const { return A_; }
  const Real& B() const { return B_; }
  const Real& C() const { return C_; }
  Real discriminant() const { return Real(4L) * A_ * C_ - B_ * B_; }

 private:
  Real A_, B_, C_;
};

// 2 pi / sqrt(4AC - B^2)
Real ellipse_area(const Ellipse& e);

// sqrt(2(A+C)) * area: a guaranteed majorant of the true perimeter
Real circumference_bound(const Ellipse& e);

// Arc length by rotating to axis form A' a^2 + C' c^2 = 1 (A' = (A+C+h)/2,
// C' = (A+C-h)/2, h = hypot(A-C, B)) and adaptive Simpson quadrature,
// relative tolerance ~1e-12.
Real perimeter_numeric(const Ellipse& e);

// Exact number of integer points with A a^2 + B ac + C c^2 <= scale
// (boundary included). Throws std::overflow_error when the bounding box
// exceeds 1e9 candidates.
long long lattice_count(const Ellipse& e, const Real& scale);

struct DavenportReport {
  long long count;
  Real area;       // scale * vol(E)
  Real perimeter;  // quadrature perimeter of the scaled boundary
  Real lhs;        // |count - area|
  Real rhs;        // 4 (perimeter + 1)
  bool pass;
};

DavenportReport davenport_check(const Ellipse& e, const Real& scale);

struct AnnulusSpec {
  HPoint xi;  // reduced
  Real y;     // Im(tau) of the horizontal line, > 0
  Real eps;   // in [0, (Im xi / (100 |xi|^3))^2]
  int nu;     // +1 or -1
};

// All integer (a,c) with |a^2 + nu 2|Re xi| ac + |xi|^2 c^2 - Im(xi)/y|
// <= 50 |xi|^3 sqrt(eps) / y, boundary included, in row order.
std::vector<std::pair<int64_t, int64_t>> annulus_pairs(const AnnulusSpec& spec);

// 2 (16 pi (sqrt(2 Im xi) + sqrt y)/sqrt y + 100 pi |xi|^3 sqrt(eps)/(y Im xi))
Real annulus_count_bound(const AnnulusSpec& spec);

// annulus bound times (4x + 13|xi|)
Real matrix_count_bound(const HPoint& xi, const Real& x, const Real& y, const Real& eps);

// Exact count of gamma in SL2(Z), one per sign pair, for which some
// tau = xt + iy with |xt| <= x satisfies |gamma tau - xi| <= eps and
// gamma tau in the closed fundamental domain. Decided by interval
// bisection over xt down to width 2^-40; undecidable slivers count as
// members (safe for the <= bound checks). Throws std::invalid_argument
// when entry_cap is below the search bounds the ellipse lemma guarantees.
long long matrix_count_bruteforce(const HPoint& xi, const Real& x, const Real& y,
                                  const Real& eps, long entry_cap);

struct EllipseLemmaReport {
  UnimodularMatrix gamma;
  int nu;  // sign realizing the conic inequality
  Real lhs_conic, rhs_conic;
  Real max_ac2, rhs_ac2;
  Real lhs_b, rhs_b;
  Real lhs_d, rhs_d;
  bool pass_conic, pass_ac2, pass_b, pass_d;
  bool pass;
};

// Checks the four inequalities of the reduction lemma for the canonical
// matrix carrying tau into the fundamental domain near xi. Preconditions:
// eps <= sqrt(3)/(3|xi|+2) and |reduce(tau) - xi| <= eps.
EllipseLemmaReport ellipse_lemma_check(const HPoint& xi, const HPoint& tau, const Real& eps);

}  // namespace unitj
