#pragma once

// The effective-constant calculus: a sign/level/magnitude number type that
// survives doubly-exponential magnitudes, the named constants of the bound
// machinery, the height lower/upper bounds, the final minimal-isogeny-
// degree bounds, and the crossover search for modest Galois indices.

#include <optional>
#include <string>
#include <vector>

#include "unitj/numeric.hpp"

namespace unitj {

struct level_overflow : std::domain_error {
  using std::domain_error::domain_error;
};

// x represented as (sign, level, magnitude):
//   level 0: |x| = magnitude, below 2^62
//   level 1: ln|x| = magnitude
//   level 2: ln ln |x| = magnitude
// normalized so each level's magnitude starts where the one below ends;
// comparisons are exact across levels, and additions absorb the smaller
// operand once it falls below working precision (the usual float
// semantics, lifted one or two exponentials up).
class LogValue {
 public:
  LogValue() : sign_(0), level_(0), mag_(0L) {}
  static LogValue from_real(const Real& x);
  static LogValue from_ln(const Real& lnx, int sign = 1);
  static LogValue zero() { return LogValue(); }
  static LogValue one() { return from_real(Real(1L)); }

  int sign() const { return sign_; }
  int level() const { return level_; }
  const Real& magnitude() const { return mag_; }

  bool is_zero() const { return sign_ == 0; }
  // natural log of a positive value, one level down
  LogValue ln() const;
  // e^x for positive x; raises the level
  static LogValue exp_of(const LogValue& x);
  // ln|x| as a plain Real; throws level_overflow at level 2
  Real ln_real() const;
  // the value as a Real when representable
  Real to_real() const;
  bool fits_level0() const { return level_ == 0; }

  LogValue pow_si(long k) const;

  friend LogValue operator*(const LogValue& a, const LogValue& b);
  friend LogValue operator/(const LogValue& a, const LogValue& b);
  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend int cmp(const LogValue& a, const LogValue& b);

 private:
  void normalize();
  int sign_;
  int level_;
  Real mag_;
};

inline bool operator<(const LogValue& a, const LogValue& b) { return cmp(a, b) < 0; }
inline bool operator<=(const LogValue& a, const LogValue& b) { return cmp(a, b) <= 0; }
inline bool operator>(const LogValue& a, const LogValue& b) { return cmp(a, b) > 0; }
inline bool operator>=(const LogValue& a, const LogValue& b) { return cmp(a, b) >= 0; }
LogValue max(const LogValue& a, const LogValue& b);

// [GL2(Zhat) : rho_infty(G_K)] < gamma1 D^gamma2 max{1, h(E), log D}^(2 gamma2)
// with gamma1 = exp(10^21483), gamma2 = 2.4e10; hE_max is the caller's
// max{1, h(E), log D}.
LogValue lombardo_index(long D, const Real& hE_max);

// (max{e^{18 pi h}, D, (4e11 H(xi))^20})^{1/20}
LogValue threshold_N(const Real& h, long D, const Real& H_xi);
// variant with the recalled terms e^{6 pi |tau0|/D} and e^{e h}; the
// calculus takes the max of both readings (they coincide whenever
// |tau0|/D <= 3h)
LogValue threshold_N_recalled(const Real& h, long D, const Real& H_xi,
                              const Real& tau0_abs_over_D);

// c1' = 1e54 D^6 h^2 (the linear-forms constant)
LogValue david_c1(long D, const Real& h);

struct ConjboundConstants {
  LogValue c1;          // 4e54 D^6 h^2, the authoritative value
  LogValue c1_variant;  // 2e51 D^6 h^2, the in-proof variant, for reports
  Real c2;              // 14 + 3 log max{1, omega_max}
};
ConjboundConstants conjbound_c(long D, const Real& h, const Real& omega_max);

// h(j0) - 6 log(1 + h(j0)) + 6 log N - 84 index log log N - 16.212;
// requires N >= 3 and a level-0 index
Real lower_bound_hj(const LogValue& N, const Real& h_j0, const LogValue& index);

// 6e7 h D index (N^{-1/10} + sqrt(eps)) (c1 (log N)^6 + c2) + 3 |log eps|
// for N >= max{4e11, D, e^{18 pi h}} and 0 < eps < 1e-5
Real upper_bound_hj_unit(const LogValue& N, const Real& eps, const Real& h, long D,
                         const Real& index, const Real& c1, const Real& c2);

// 1e8 h D^2 |delta|^5 index / deg_alpha (N^{-1/10} + sqrt eps)
// (c1 (log N)^6 + c2) + Pen + 2 |log eps|
// for N >= max{e^{18 pi h}, D, 4e11 sqrt|delta|} and
// 0 < eps < 1e-4 / max_sigma |xi^sigma|^4
Real upper_bound_hj_translate(const LogValue& N, const Real& eps, const Real& h, long D,
                              const Real& index, const mpz_class& delta, long deg_alpha,
                              const Real& pen, const Real& c1, const Real& c2,
                              const Real& max_xi_abs2);

// alpha = 0 collapses the translate case to the unit case
Real upper_bound_hj_dispatch(bool alpha_is_zero, const LogValue& N, const Real& eps,
                             const Real& h, long D, const Real& index,
                             const mpz_class& delta, long deg_alpha, const Real& pen,
                             const Real& c1, const Real& c2, const Real& max_xi_abs2);

struct TranslateData {
  mpz_class delta;     // discriminant of the CM order, < 0, != -3
  long deg_alpha;      // [Q(alpha):Q] = class number
  Real pen;            // Pen(xi)
  bool pen_unbounded;  // degenerate c along some conjugate
  Real max_xi_abs2;    // max_sigma |xi^sigma|^2
};

struct BoundInputs {
  long D = 1;
  Real h;          // max{1, h(1,g2,g3), h(j0)}; must be >= max(1, h_j0)
  Real h_j0;
  LogValue index;  // >= 1
  Real omega_max;  // max{1, |omega_0,1|, |omega_0,2|} over embeddings
  std::optional<TranslateData> cm;
};

struct BoundTerm {
  std::string name;
  LogValue value;
};

struct FinalBound {
  bool available = true;
  std::string unavailable_reason;
  LogValue bound;
  std::string dominating;
  std::vector<BoundTerm> terms;
  // the named constants, for the report document
  LogValue C, c1, c1_prime, c1_variant;
  Real c2, c3;
  LogValue threshold;  // script-N for the relevant xi
};

// six-term max of the unit case (with the embedded 4e11 floor)
FinalBound final_bound_unit(const BoundInputs& inputs);
// eight-term max of the translate case
FinalBound final_bound_translate(const BoundInputs& inputs);

struct CrossoverResult {
  LogValue n_star;
  Real log10_n;
  bool certified;  // lower > upper at N*, reverse at N*/2, and for ten
                   // further doublings
};

// smallest N with lower_bound_hj > upper_bound_hj_unit at
// eps = (log N)^{-12}, honoring all preconditions; needs a level-0 index
CrossoverResult crossover_search(const BoundInputs& inputs);

struct FaltingsChainReport {
  Real rhs;              // h(E0) + log(N)/2 - 7 index log log N
  Real raynaud_ceiling;  // h(E0) + log(N)/2
  Real lambda_n;         // the averaging constant
  Real half_log_n_minus_lambda;
  bool consistent;       // rhs <= ceiling
};

FaltingsChainReport faltings_chain_check(long N, const Real& h_E0, const Real& index);

}  // namespace unitj
