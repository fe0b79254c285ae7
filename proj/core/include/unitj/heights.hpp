#pragma once

// Absolute logarithmic heights of rationals and quadratic numbers in the
// Mahler-measure form, the unit height decomposition into the two
// conjugate sums, and the elementary sum/difference height inequalities.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "unitj/numeric.hpp"

namespace unitj {

// exact element of Q or of a quadratic field Q(sqrt(d)), d squarefree
class AlgebraicNumber {
 public:
  static AlgebraicNumber rational(const mpq_class& v);
  // a + b sqrt(d); d squarefree, not 0 or 1 (normalized internally from
  // any nonzero square-free-able d0: b sqrt(d0) = b s sqrt(d))
  static AlgebraicNumber quadratic(const mpq_class& a, const mpq_class& b,
                                   const mpz_class& d0);
  // the root (-B + sign * sqrt(B^2-4AC))/(2A) of A x^2 + B x + C
  static AlgebraicNumber from_minpoly(const mpz_class& A, const mpz_class& B,
                                      const mpz_class& C, int sign = 1);

  bool is_rational() const { return b_ == 0; }
  const mpq_class& rat_a() const { return a_; }
  const mpq_class& rat_b() const { return b_; }
  const mpz_class& field_disc() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  AlgebraicNumber conjugate() const;
  AlgebraicNumber inverse() const;

  // primitive integer minimal polynomial; degree 1 -> (0, q, -p) for p/q
  void minpoly(mpz_class& A, mpz_class& B, mpz_class& C) const;

  // the selected embedding (principal sqrt: positive, or i sqrt|d|)
  Complex embed(mpfr_prec_t prec = 0) const;

  std::string str() const;

 private:
  AlgebraicNumber() = default;
  mpq_class a_, b_;  // a + b sqrt(d)
  mpz_class d_;      // squarefree; 1 when rational (b = 0)
};

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// throws FieldMismatch when the operands live in different quadratic fields
AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y);
AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y);
AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y);

// absolute logarithmic height; h(0) = 0 by convention
Real height(const AlgebraicNumber& x);
inline Real multiplicative_height(const AlgebraicNumber& x) { return exp(height(x)); }

struct UnitDecomposition {
  Real positive_part;  // (1/D) sum_{|m|>1} log m
  Real negative_part;  // -(1/D) sum_{|m|<1} log m
  bool agree;          // within 1e-10 * D
};

// conjugate magnitudes of an algebraic unit; throws std::invalid_argument
// when the product of the magnitudes is not 1 within 1e-9
UnitDecomposition unit_height_decomposition(const std::vector<Real>& magnitudes, long degree);

struct HeightCheckReport {
  bool skipped;        // operands in incompatible fields
  Real h_x, h_y, h_diff;
  Real mult_lhs, mult_rhs;  // H(x-y) vs 2 H(x) H(y)
  Real low_lhs, low_rhs;    // h(x-y) vs h(x) - h(y) - log 2
  bool pass_mult, pass_low, pass;
};

HeightCheckReport height_arithmetic_checks(const AlgebraicNumber& x, const AlgebraicNumber& y);

}  // namespace unitj
