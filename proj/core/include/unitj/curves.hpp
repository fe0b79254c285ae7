#pragma once

// Elliptic curves y^2 = 4x^3 - g2 x - g3 over Q: exact j-invariant, period
// lattices by the complex AGM (validated by recomputing g2, g3 from the
// lattice through Eisenstein series), the height h = max{1, h(1,g2,g3),
// h(j0)}, and the CM-point quantities c(xi), Pen(xi) of the translate
// bounds.

#include <gmpxx.h>

#include <array>
#include <vector>

#include "unitj/halfplane.hpp"
#include "unitj/heights.hpp"
#include "unitj/numeric.hpp"

namespace unitj {

struct singular_curve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class CurveOverQ {
 public:
  CurveOverQ(const mpq_class& g2, const mpq_class& g3, bool cm_flag = false);
  const mpq_class& g2() const { return g2_; }
  const mpq_class& g3() const { return g3_; }
  const mpq_class& disc() const { return disc_; }  // 16(g2^3 - 27 g3^2)
  const mpq_class& j0() const { return j0_; }
  bool cm_flag() const { return cm_flag_; }

 private:
  mpq_class g2_, g3_, disc_, j0_;
  bool cm_flag_;
};

// 1728 g2^3 / (g2^3 - 27 g3^2) in exact rational arithmetic
mpq_class j_invariant(const mpq_class& g2, const mpq_class& g3);

struct PeriodLattice {
  Complex omega1, omega2;  // basis with omega2/omega1 = tau0 in closed F
  HPoint tau0;
};

// Lattice basis from the AGM on the cubic's roots, basis-reduced so that
// omega2/omega1 lies in the closed fundamental domain and validated by
// recomputing (g2, g3) from the lattice to relative 2^{-prec+32}.
PeriodLattice periods(const CurveOverQ& curve, mpfr_prec_t prec = 0);

struct CurveHeight {
  Real h_proj;  // h(1, g2, g3)
  Real h_j0;
  Real h;       // max{1, h_proj, h_j0}
};

CurveHeight curve_height(const CurveOverQ& curve);

struct TauHeightReport {
  Real lhs;  // |tau0| / D
  Real rhs;  // 3 max{1, h_j0}
  bool pass;
};

TauHeightReport tau_height_check(const PeriodLattice& lattice, long degree, const Real& h_j0);

struct CMPoint {
  mpz_class A, B, C;  // the reduced primitive form equivalent to the input
  HPoint root;        // (-B + i sqrt|disc|)/(2A), in the closed domain
  mpz_class delta;    // B^2 - 4AC
};

// Validates B^2 - 4AC < 0, A > 0, gcd(A,B,C) = 1, reduces the form, and
// builds the exact root. H(xi) = sqrt(max(A, C)) <= sqrt|delta| holds for
// reduced forms.
CMPoint cm_point(const mpz_class& A, const mpz_class& B, const mpz_class& C,
                 mpfr_prec_t prec = 0);

// multiplicative height of the point: sqrt(max(A, C)) for a reduced form
Real cm_height(const CMPoint& xi);

// all reduced primitive forms of discriminant delta (< 0, = 0 or 1 mod 4)
std::vector<std::array<mpz_class, 3>> reduced_forms(const mpz_class& delta);

struct CConstant {
  Real value;
  Real delta;             // the radius entering the constant
  int branch;             // 0: boundary edge/arc, 1: xi = i, 2: interior
  bool degenerate;        // interior case with Im j(xi) = 0 (value 0)
};

// The local lower-bound constant c(xi); throws std::domain_error at the
// order-3 elliptic points (delta = -3).
CConstant c_constant(const CMPoint& xi);

struct PenResult {
  Real value;
  bool unbounded;     // some conjugate has degenerate c
  long class_number;  // number of reduced forms of the discriminant
};

// Pen(xi) = log max over the form classes of max{1, 1/c(xi^sigma)}
PenResult pen(const CMPoint& xi);

}  // namespace unitj
