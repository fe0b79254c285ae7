#include "unitj/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "unitj/arith.hpp"

namespace unitj {

namespace {

// Level boundaries. Values below 2^62 live at level 0. Level 1 stores
// ln|x| as a plain Real, which works up to ln|x| = e^{2^61} (the value of
// such an x would need an exponent past MPFR's range, but its log is an
// ordinary number). Level 2 takes over beyond that, storing ln ln |x|,
// which therefore starts at 2^61.
Real level_edge(mpfr_prec_t p) { return pow2(62, p); }
Real log_edge(mpfr_prec_t p) { return Real(62L) * const_log2(p); }
Real mag12_edge(mpfr_prec_t p) { return pow2(61, p); }
Real level1_cap(mpfr_prec_t p) { return exp(pow2(61, p)); }

Real logsumexp(const Real& a, const Real& b) {
  const Real& big = a >= b ? a : b;
  const Real& small = a >= b ? b : a;
  return big + log1p(exp(small - big));
}

// ln(e^a - e^b) for a > b
Real logdiffexp(const Real& a, const Real& b) {
  Real t = exp(b - a);
  if (t >= 1) throw std::domain_error("logdiffexp: nonpositive difference");
  return a + log1p(-t);
}

}  // namespace

void LogValue::normalize() {
  if (sign_ == 0) {
    level_ = 0;
    mag_ = Real(0L);
    return;
  }
  mpfr_prec_t p = mag_.prec();
  for (;;) {
    if (level_ == 0) {
      if (mag_ < level_edge(p)) break;
      mag_ = log(mag_);
      level_ = 1;
    } else if (level_ == 1) {
      if (mag_ < log_edge(p)) {
        mag_ = exp(mag_);
        level_ = 0;
      } else if (mag_ > level1_cap(p)) {
        mag_ = log(mag_);
        level_ = 2;
      } else {
        break;
      }
    } else {
      if (mag_ <= mag12_edge(p)) {
        mag_ = exp(mag_);
        level_ = 1;
      } else {
        break;
      }
    }
  }
}

LogValue LogValue::from_real(const Real& x) {
  LogValue v;
  v.sign_ = x.sgn();
  v.level_ = 0;
  v.mag_ = abs(x);
  v.normalize();
  return v;
}

LogValue LogValue::from_ln(const Real& lnx, int sign) {
  if (sign == 0) return LogValue();
  LogValue v;
  v.sign_ = sign > 0 ? 1 : -1;
  v.level_ = 1;
  v.mag_ = lnx;
  v.normalize();
  return v;
}

LogValue LogValue::ln() const {
  if (sign_ <= 0) throw std::domain_error("LogValue::ln: needs a positive value");
  if (level_ == 0) return from_real(log(mag_));
  if (level_ == 1) return from_real(mag_);
  return from_ln(mag_);
}

LogValue LogValue::exp_of(const LogValue& x) {
  if (x.sign_ == 0) return one();
  if (x.sign_ < 0) {
    if (x.level_ > 0) return from_real(Real(0L));  // e^{-huge} underflows
    return from_real(exp(-x.mag_));
  }
  if (x.level_ == 0) return from_ln(x.mag_);
  if (x.level_ == 1) {
    // ln(e^x) = x: representable as a level-1 magnitude while x.mag is
    // modest, a level-2 magnitude beyond that
    if (x.mag_ <= mag12_edge(x.mag_.prec())) return from_ln(exp(x.mag_));
    LogValue v;
    v.sign_ = 1;
    v.level_ = 2;
    v.mag_ = x.mag_;
    return v;
  }
  throw level_overflow("LogValue::exp_of: level-3 magnitude");
}

Real LogValue::ln_real() const {
  if (sign_ <= 0) throw std::domain_error("LogValue::ln_real: needs a positive value");
  if (level_ == 0) return log(mag_);
  if (level_ == 1) return mag_;
  throw level_overflow("LogValue::ln_real: logarithm exceeds the level-0 range");
}

Real LogValue::to_real() const {
  if (sign_ == 0) return Real(0L);
  if (level_ == 0) return sign_ > 0 ? mag_ : -mag_;
  if (level_ == 1) {
    Real v = exp(mag_);
    if (!v.is_finite()) throw level_overflow("LogValue::to_real: magnitude overflows");
    return sign_ > 0 ? v : -v;
  }
  throw level_overflow("LogValue::to_real: level-2 value");
}

LogValue LogValue::pow_si(long k) const {
  if (k == 0) return one();
  if (sign_ == 0) return LogValue();
  if (sign_ < 0) throw std::domain_error("LogValue::pow_si: negative base");
  if (level_ == 0) return from_ln(log(mag_) * k);
  if (level_ == 1) return from_ln(mag_ * k);
  // ln(x^k) = k e^m, so ln ln(x^k) = m + ln k
  LogValue v = *this;
  v.mag_ = mag_ + log(Real(k));
  return v;
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return LogValue();
  int sign = a.sign_ * b.sign_;
  if (a.level_ <= 1 && b.level_ <= 1) {
    Real la = a.level_ == 0 ? log(a.mag_) : a.mag_;
    Real lb = b.level_ == 0 ? log(b.mag_) : b.mag_;
    return LogValue::from_ln(la + lb, sign);
  }
  const LogValue& big = a.level_ >= b.level_ ? a : b;
  const LogValue& small = a.level_ >= b.level_ ? b : a;
  LogValue v;
  v.sign_ = sign;
  v.level_ = 2;
  if (small.level_ == 2) {
    v.mag_ = logsumexp(big.mag_, small.mag_);
  } else {
    // ln ln(big*small) = m + log1p(ln(small) e^{-m}); the correction
    // underflows to zero whenever the factors are far apart
    Real lsmall = small.level_ == 0 ? log(small.mag_) : small.mag_;
    v.mag_ = big.mag_ + log1p(lsmall * exp(-big.mag_));
  }
  v.normalize();
  return v;
}

LogValue operator/(const LogValue& a, const LogValue& b) {
  if (b.sign_ == 0) throw std::domain_error("LogValue: division by zero");
  if (a.sign_ == 0) return LogValue();
  if (a.level_ <= 1 && b.level_ <= 1) {
    Real la = a.level_ == 0 ? log(a.mag_) : a.mag_;
    Real lb = b.level_ == 0 ? log(b.mag_) : b.mag_;
    return LogValue::from_ln(la - lb, a.sign_ * b.sign_);
  }
  throw level_overflow("LogValue: division at level 2 is not supported");
}

LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  if (a.sign_ == b.sign_) {
    if (a.level_ == 0 && b.level_ == 0)
      return LogValue::from_real(a.sign_ > 0 ? a.mag_ + b.mag_ : -(a.mag_ + b.mag_));
    if (a.level_ <= 1 && b.level_ <= 1) {
      Real la = a.level_ == 0 ? log(a.mag_) : a.mag_;
      Real lb = b.level_ == 0 ? log(b.mag_) : b.mag_;
      return LogValue::from_ln(logsumexp(la, lb), a.sign_);
    }
    // level 2: the larger operand absorbs the smaller at working precision
    LogValue absa = a, absb = b;
    absa.sign_ = absb.sign_ = 1;
    return cmp(absa, absb) >= 0 ? a : b;
  }
  // mixed signs
  const LogValue& pos = a.sign_ > 0 ? a : b;
  const LogValue& neg = a.sign_ > 0 ? b : a;
  LogValue negabs = neg;
  negabs.sign_ = 1;
  int c = cmp(pos, negabs);
  if (c == 0) return LogValue();
  if (pos.level_ <= 1 && negabs.level_ <= 1) {
    Real lp = pos.level_ == 0 ? log(pos.mag_) : pos.mag_;
    Real ln_ = negabs.level_ == 0 ? log(negabs.mag_) : negabs.mag_;
    if (c > 0) return LogValue::from_ln(logdiffexp(lp, ln_), 1);
    return LogValue::from_ln(logdiffexp(ln_, lp), -1);
  }
  // a level-2 magnitude absorbs the other side entirely
  if (c > 0) return pos;
  LogValue r = negabs;
  r.sign_ = -1;
  return r;
}

int cmp(const LogValue& a, const LogValue& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
  if (a.sign_ == 0) return 0;
  int bymag = a.level_ != b.level_ ? (a.level_ < b.level_ ? -1 : 1) : cmp(a.mag_, b.mag_);
  return a.sign_ > 0 ? bymag : -bymag;
}

LogValue max(const LogValue& a, const LogValue& b) { return cmp(a, b) >= 0 ? a : b; }

LogValue lombardo_index(long D, const Real& hE_max) {
  if (D < 1 || hE_max < 1)
    throw std::invalid_argument("lombardo_index: need D >= 1 and hE_max >= 1");
  mpfr_prec_t p = std::max<mpfr_prec_t>(hE_max.prec(), 256);
  PrecisionScope scope(p);
  Real gamma1_ln = pow(Real(10L), 21483L);
  Real gamma2(24000000000L);  // 2.4e10
  return LogValue::from_ln(gamma1_ln + gamma2 * log(Real(D)) + 2 * gamma2 * log(hE_max));
}

LogValue threshold_N(const Real& h, long D, const Real& H_xi) {
  if (h < 1 || D < 1 || H_xi < 1)
    throw std::invalid_argument("threshold_N: need h, H_xi >= 1 and D >= 1");
  mpfr_prec_t p = std::max<mpfr_prec_t>(h.prec(), 256);
  PrecisionScope scope(p);
  Real t1 = 18 * const_pi(p) * h;
  Real t2 = log(Real(D));
  Real t3 = 20 * log(Real(400000000000L) * H_xi);
  return LogValue::from_ln(max(t1, max(t2, t3)) / 20);
}

LogValue threshold_N_recalled(const Real& h, long D, const Real& H_xi,
                              const Real& tau0_abs_over_D) {
  mpfr_prec_t p = std::max<mpfr_prec_t>(h.prec(), 256);
  PrecisionScope scope(p);
  Real t1 = 6 * const_pi(p) * tau0_abs_over_D;
  Real t2 = exp(Real(1L)) * h;
  Real t3 = log(Real(D));
  Real t4 = 20 * log(Real(400000000000L) * H_xi);
  return LogValue::from_ln(max(max(t1, t2), max(t3, t4)) / 20);
}

LogValue david_c1(long D, const Real& h) {
  if (D < 1 || h < 1) throw std::invalid_argument("david_c1: need D >= 1 and h >= 1");
  return LogValue::from_ln(Real(54L) * log(Real(10L)) + 6 * log(Real(D)) + 2 * log(h));
}

ConjboundConstants conjbound_c(long D, const Real& h, const Real& omega_max) {
  if (D < 1 || h < 1) throw std::invalid_argument("conjbound_c: need D >= 1 and h >= 1");
  ConjboundConstants out;
  Real base = 6 * log(Real(D)) + 2 * log(h);
  out.c1 = LogValue::from_ln(log(Real(4L)) + Real(54L) * log(Real(10L)) + base);
  out.c1_variant = LogValue::from_ln(log(Real(2L)) + Real(51L) * log(Real(10L)) + base);
  out.c2 = Real(14L) + 3 * log(max(Real(1L), omega_max));
  return out;
}

Real lower_bound_hj(const LogValue& N, const Real& h_j0, const LogValue& index) {
  if (!index.fits_level0())
    throw level_overflow("lower_bound_hj: index must fit level 0");
  Real idx = index.to_real();
  if (idx < 1) throw std::invalid_argument("lower_bound_hj: index must be >= 1");
  Real lnN = N.ln_real();
  if (lnN < log(Real(3L))) throw std::invalid_argument("lower_bound_hj: N must be >= 3");
  return h_j0 - 6 * log1p(h_j0) + 6 * lnN - 84 * idx * log(lnN) - Real(16.212);
}

namespace {

// e^{-lnN/10}, clamped so the result stays a true upper bound after the
// exponent would underflow
Real n_pow_minus_tenth(const Real& lnN) {
  Real clipped = min(lnN / 10, Real(100000L));
  return exp(-clipped);
}

void check_upper_preconditions_unit(const Real& lnN, const Real& h, long D, const Real& eps) {
  mpfr_prec_t p = lnN.prec();
  if (lnN < log(Real(400000000000L)))
    throw std::invalid_argument("upper_bound_hj: N must be >= 4e11");
  if (lnN < log(Real(D))) throw std::invalid_argument("upper_bound_hj: N must be >= [K:Q]");
  if (lnN < 18 * const_pi(p) * h)
    throw std::invalid_argument("upper_bound_hj: N must be >= e^{18 pi h}");
  if (!(eps.sgn() > 0) || eps >= Real(1e-5))
    throw std::invalid_argument("upper_bound_hj: eps must lie in (0, 1e-5)");
}

}  // namespace

Real upper_bound_hj_unit(const LogValue& N, const Real& eps, const Real& h, long D,
                         const Real& index, const Real& c1, const Real& c2) {
  Real lnN = N.ln_real();
  check_upper_preconditions_unit(lnN, h, D, eps);
  if (index < 1) throw std::invalid_argument("upper_bound_hj: index must be >= 1");
  Real front = Real(60000000L) * h * Real(D) * index;
  Real decay = n_pow_minus_tenth(lnN) + sqrt(eps);
  Real poly = c1 * pow(lnN, 6L) + c2;
  return front * decay * poly + 3 * abs(log(eps));
}

Real upper_bound_hj_translate(const LogValue& N, const Real& eps, const Real& h, long D,
                              const Real& index, const mpz_class& delta, long deg_alpha,
                              const Real& pen, const Real& c1, const Real& c2,
                              const Real& max_xi_abs2) {
  if (delta == -3)
    throw std::domain_error(
        "upper_bound_hj_translate: delta = -3 puts xi at the excluded elliptic point");
  if (delta >= 0) throw std::invalid_argument("upper_bound_hj_translate: delta must be < 0");
  if (deg_alpha < 1)
    throw std::invalid_argument("upper_bound_hj_translate: deg_alpha must be >= 1");
  Real lnN = N.ln_real();
  mpfr_prec_t p = lnN.prec();
  Real absdelta{mpz_class(-delta)};
  if (lnN < 18 * const_pi(p) * h)
    throw std::invalid_argument("upper_bound_hj_translate: N must be >= e^{18 pi h}");
  if (lnN < log(Real(D)))
    throw std::invalid_argument("upper_bound_hj_translate: N must be >= [K:Q]");
  if (lnN < log(Real(400000000000L) * sqrt(absdelta)))
    throw std::invalid_argument("upper_bound_hj_translate: N must be >= 4e11 sqrt|delta|");
  Real eps_cap = Real(1e-4) / (max_xi_abs2 * max_xi_abs2);
  if (!(eps.sgn() > 0) || eps >= eps_cap)
    throw std::invalid_argument(
        "upper_bound_hj_translate: eps must lie in (0, 1e-4 min|xi^sigma|^{-4})");
  Real front =
      Real(100000000L) * h * Real(D) * Real(D) * pow(absdelta, 5L) * index / deg_alpha;
  Real decay = n_pow_minus_tenth(lnN) + sqrt(eps);
  Real poly = c1 * pow(lnN, 6L) + c2;
  return front * decay * poly + pen + 2 * abs(log(eps));
}

Real upper_bound_hj_dispatch(bool alpha_is_zero, const LogValue& N, const Real& eps,
                             const Real& h, long D, const Real& index,
                             const mpz_class& delta, long deg_alpha, const Real& pen,
                             const Real& c1, const Real& c2, const Real& max_xi_abs2) {
  if (alpha_is_zero) return upper_bound_hj_unit(N, eps, h, D, index, c1, c2);
  return upper_bound_hj_translate(N, eps, h, D, index, delta, deg_alpha, pen, c1, c2,
                                  max_xi_abs2);
}

namespace {

void validate_inputs(const BoundInputs& in) {
  if (in.D < 1) throw std::invalid_argument("BoundInputs: D must be >= 1");
  if (in.h < 1) throw std::invalid_argument("BoundInputs: h must be >= 1");
  if (in.h_j0.sgn() < 0) throw std::invalid_argument("BoundInputs: h_j0 must be >= 0");
  if (in.h < max(Real(1L), in.h_j0))
    throw std::invalid_argument("BoundInputs: h must dominate max(1, h_j0) by definition");
  if (cmp(in.index, LogValue::one()) < 0)
    throw std::invalid_argument("BoundInputs: index must be >= 1");
}

Real c3_of(const Real& h_j0) { return Real(20L) - h_j0 + 6 * log1p(h_j0); }

FinalBound assemble(std::vector<BoundTerm> terms) {
  FinalBound out;
  out.terms = std::move(terms);
  out.bound = out.terms[0].value;
  out.dominating = out.terms[0].name;
  for (const BoundTerm& t : out.terms) {
    if (cmp(t.value, out.bound) > 0) {
      out.bound = t.value;
      out.dominating = t.name;
    }
  }
  return out;
}

}  // namespace

FinalBound final_bound_unit(const BoundInputs& inputs) {
  validate_inputs(inputs);
  mpfr_prec_t p = std::max<mpfr_prec_t>(inputs.h.prec(), 256);
  PrecisionScope scope(p);
  ConjboundConstants cc = conjbound_c(inputs.D, inputs.h, inputs.omega_max);
  Real c3 = c3_of(inputs.h_j0);
  LogValue C =
      LogValue::from_real(Real(60000000L) * inputs.h * Real(inputs.D)) * inputs.index;
  LogValue Cc1 = C * cc.c1;
  LogValue Cc2 = C * LogValue::from_real(cc.c2);
  std::vector<BoundTerm> terms;
  terms.push_back(
      {"1e180_(Cc1)^20", LogValue::from_ln(Real(180L) * log(Real(10L))) * Cc1.pow_si(20)});
  terms.push_back({"(Cc2)^10", Cc2.pow_si(10)});
  terms.push_back(
      {"exp(Cc1+Cc2+c3)", LogValue::exp_of(Cc1 + Cc2 + LogValue::from_real(c3))});
  terms.push_back({"exp(120^2_index^2)",
                   LogValue::exp_of(LogValue::from_real(Real(14400L)) * inputs.index.pow_si(2))});
  terms.push_back({"exp(18_pi_h)", LogValue::from_ln(18 * const_pi(p) * inputs.h)});
  terms.push_back({"degree_D", LogValue::from_real(Real(inputs.D))});
  terms.push_back({"floor_4e11", LogValue::from_real(Real(400000000000L))});
  FinalBound out = assemble(std::move(terms));
  out.C = C;
  out.c1 = cc.c1;
  out.c1_prime = david_c1(inputs.D, inputs.h);
  out.c1_variant = cc.c1_variant;
  out.c2 = cc.c2;
  out.c3 = c3;
  out.threshold = threshold_N(inputs.h, inputs.D, Real(1L));  // H(zeta) = 1
  return out;
}

FinalBound final_bound_translate(const BoundInputs& inputs) {
  validate_inputs(inputs);
  if (!inputs.cm) throw std::invalid_argument("final_bound_translate: CM data required");
  const TranslateData& cm = *inputs.cm;
  FinalBound out;
  if (cm.delta == -3) {
    out.available = false;
    out.unavailable_reason = "delta = -3 places xi at the excluded elliptic point";
    return out;
  }
  if (cm.pen_unbounded) {
    out.available = false;
    out.unavailable_reason =
        "Pen(xi) is unbounded: a conjugate point has a degenerate local constant c";
    return out;
  }
  mpfr_prec_t p = std::max<mpfr_prec_t>(inputs.h.prec(), 256);
  PrecisionScope scope(p);
  ConjboundConstants cc = conjbound_c(inputs.D, inputs.h, inputs.omega_max);
  Real c3 = c3_of(inputs.h_j0);
  Real absdelta{mpz_class(-cm.delta)};
  LogValue Chat = LogValue::from_real(Real(100000000L) * inputs.h * Real(inputs.D) *
                                      Real(inputs.D) * pow(absdelta, 5L) / cm.deg_alpha) *
                  inputs.index;
  LogValue Cc1 = Chat * cc.c1;
  LogValue Cc2 = Chat * LogValue::from_real(cc.c2);
  std::vector<BoundTerm> terms;
  terms.push_back(
      {"1e180_(Cc1)^20", LogValue::from_ln(Real(180L) * log(Real(10L))) * Cc1.pow_si(20)});
  terms.push_back({"(Cc2)^10", Cc2.pow_si(10)});
  terms.push_back({"exp(Cc1+Cc2+c3+Pen)",
                   LogValue::exp_of(Cc1 + Cc2 + LogValue::from_real(c3) +
                                    LogValue::from_real(cm.pen))});
  terms.push_back({"exp(120^2_index^2)",
                   LogValue::exp_of(LogValue::from_real(Real(14400L)) * inputs.index.pow_si(2))});
  terms.push_back({"exp(18_pi_h)", LogValue::from_ln(18 * const_pi(p) * inputs.h)});
  terms.push_back({"degree_D", LogValue::from_real(Real(inputs.D))});
  terms.push_back({"exp(3|delta|)", LogValue::from_ln(3 * absdelta)});
  terms.push_back(
      {"4e11_sqrt|delta|", LogValue::from_real(Real(400000000000L) * sqrt(absdelta))});
  FinalBound res = assemble(std::move(terms));
  res.C = Chat;
  res.c1 = cc.c1;
  res.c1_prime = david_c1(inputs.D, inputs.h);
  res.c1_variant = cc.c1_variant;
  res.c2 = cc.c2;
  res.c3 = c3;
  res.threshold = threshold_N(inputs.h, inputs.D, max(Real(1L), sqrt(absdelta)));
  return res;
}

CrossoverResult crossover_search(const BoundInputs& inputs) {
  validate_inputs(inputs);
  if (!inputs.index.fits_level0())
    throw level_overflow("crossover_search: needs a modest (level-0) index");
  mpfr_prec_t p = std::max<mpfr_prec_t>(inputs.h.prec(), 256);
  PrecisionScope scope(p);
  Real idx = inputs.index.to_real();
  ConjboundConstants cc = conjbound_c(inputs.D, inputs.h, inputs.omega_max);
  Real c1 = cc.c1.to_real();
  Real c2 = cc.c2;

  auto lower = [&](const Real& lnN) {
    return inputs.h_j0 - 6 * log1p(inputs.h_j0) + 6 * lnN - 84 * idx * log(lnN) -
           Real(16.212);
  };
  auto upper = [&](const Real& lnN) {
    // eps = (log N)^{-12}: sqrt(eps) = (log N)^{-6}, 3|log eps| = 36 loglog N
    Real front = Real(60000000L) * inputs.h * Real(inputs.D) * idx;
    Real decay = n_pow_minus_tenth(lnN) + pow(lnN, -6L);
    Real poly = c1 * pow(lnN, 6L) + c2;
    return front * decay * poly + 36 * log(lnN);
  };
  auto f = [&](const Real& lnN) { return lower(lnN) - upper(lnN); };

  Real lo = max(log(Real(400000000000L)),
                max(log(Real(inputs.D)), 18 * const_pi(p) * inputs.h));
  CrossoverResult out;
  if (f(lo).sgn() > 0) {
    out.n_star = LogValue::from_ln(lo);
    out.log10_n = lo / log(Real(10L));
    out.certified = false;  // no admissible N below the floor to compare against
    return out;
  }
  Real hi = lo;
  for (int it = 0;; ++it) {
    hi = hi * 2;
    if (f(hi).sgn() > 0) break;
    if (it > 20000) throw std::logic_error("crossover_search: no sign change found");
  }
  for (int it = 0; it < 300; ++it) {
    Real mid = (lo + hi) / 2;
    if (f(mid).sgn() > 0)
      hi = mid;
    else
      lo = mid;
  }
  out.n_star = LogValue::from_ln(hi);
  out.log10_n = hi / log(Real(10L));
  bool cert = f(hi).sgn() > 0 && f(hi - const_log2(p)).sgn() < 0;
  Real step = hi;
  for (int k = 0; k < 10 && cert; ++k) {
    step = step * 2;
    cert = f(step).sgn() > 0;
  }
  out.certified = cert;
  return out;
}

FaltingsChainReport faltings_chain_check(long N, const Real& h_E0, const Real& index) {
  if (N < 4) throw std::invalid_argument("faltings_chain_check: N must be >= 4");
  if (index < 1) throw std::invalid_argument("faltings_chain_check: index must be >= 1");
  FaltingsChainReport rep;
  Real lnN = log(Real(N));
  rep.rhs = h_E0 + lnN / 2 - 7 * index * log(lnN);
  rep.raynaud_ceiling = h_E0 + lnN / 2;
  rep.lambda_n = lambda_autissier(mpz_class(N));
  rep.half_log_n_minus_lambda = lnN / 2 - rep.lambda_n;
  rep.consistent = rep.rhs <= rep.raynaud_ceiling;
  return rep;
}

}  // namespace unitj
