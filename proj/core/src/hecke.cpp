#include "unitj/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "unitj/arith.hpp"

namespace unitj {

namespace {

std::vector<int64_t> divisors_of(int64_t N) {
  std::vector<int64_t> divs;
  for (int64_t d = 1; d * d <= N; ++d) {
    if (N % d == 0) {
      divs.push_back(d);
      if (d != N / d) divs.push_back(N / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

int64_t gcd3(int64_t a, int64_t b, int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

// sign of dist(a, b)^2 - eps^2, exact for shadowed points
int exact_dist_cmp(const QuadShadow& a, const QuadShadow& b, const mpq_class& eps) {
  mpq_class p = (a.x - b.x) * (a.x - b.x) + a.y2 + b.y2 - eps * eps;
  return sign_p_minus_s_sqrt_t(p, mpq_class(2), a.y2 * b.y2);
}

// all closed-domain representatives of a reduced point: itself, the other
// vertical edge when Re = 1/2, the circle mirror when |tau| = 1
std::vector<QuadShadow> exact_representatives(const QuadShadow& s) {
  std::vector<QuadShadow> reps{s};
  if (s.x == mpq_class(1, 2)) reps.push_back({s.x - 1, s.y2});
  if (s.x * s.x + s.y2 == 1) {
    reps.push_back({-s.x, s.y2});
    if (s.x == mpq_class(1, 2)) reps.push_back({mpq_class(1, 2) - 1, s.y2});  // corner
  }
  return reps;
}

}  // namespace

std::vector<HeckeMatrix> hecke_matrices(int64_t N, bool cyclic_only) {
  if (N < 1) throw std::invalid_argument("hecke_matrices: N must be >= 1");
  if (N > 100000000) throw std::invalid_argument("hecke_matrices: N too large to enumerate");
  std::vector<HeckeMatrix> out;
  for (int64_t n : divisors_of(N)) {
    int64_t m = N / n;
    for (int64_t l = 0; l < n; ++l) {
      bool cyc = gcd3(m, n, l) == 1;
      if (cyclic_only && !cyc) continue;
      out.push_back({m, l, n, cyc});
    }
  }
  return out;
}

HPoint tau_of(const HeckeMatrix& M, const HPoint& tau0) {
  if (tau0.shadow()) {
    const QuadShadow& sh = *tau0.shadow();
    mpq_class x = (mpq_class(M.m) * sh.x + M.l) / M.n;
    mpq_class y2 = mpq_class(M.m * M.m, M.n * M.n) * sh.y2;
    y2.canonicalize();
    return HPoint::from_exact(x, y2, tau0.prec());
  }
  Real m(static_cast<long>(M.m)), l(static_cast<long>(M.l)), n(static_cast<long>(M.n));
  return HPoint((m * tau0.re() + l) / n, m * tau0.im() / n);
}

Real cluster_factor(const HPoint& tau0, const HPoint& xi) {
  mpfr_prec_t p = std::max(tau0.prec(), xi.prec());
  PrecisionScope scope(p);
  Real R = xi.abs();
  Real t1 = 4 * abs(tau0.re()) + 17 * R;
  Real t2 = 50 * R * R * tau0.im() + 1;
  Real m1 = (sqrt(2 * xi.im()) + sqrt(tau0.im())) / sqrt(tau0.im());
  Real m2 = 5 * R * R / tau0.im();
  return 64 * const_pi(p) * t1 * t2 * max(m1, m2);
}

Real taul_interval_bound(const HPoint& xi, int64_t m, int64_t n, int64_t a, int64_t c,
                         const Real& tau0_im) {
  if (a == 0 && c == 0) throw std::invalid_argument("taul_interval_bound: (a,c) must be nonzero");
  Real R = xi.abs();
  Real mx(static_cast<long>(std::max(a < 0 ? -a : a, c < 0 ? -c : c)));
  Real arm1 = 6 * R * Real(static_cast<long>(n)) / (mx * mx) + 1;
  Real arm2 = 50 * R * R * tau0_im * Real(static_cast<long>(m)) + 1;
  return min(arm1, arm2);
}

namespace {

struct TargetCtx {
  const HPoint* xi;
  mpq_class eps;
  // doubles for the fast filter
  double xr, xi_im, epsd;
  bool xi_exact;
  std::vector<ClusterMember> members;
};

struct OrbitPointExact {
  QuadShadow reduced;
  std::vector<QuadShadow> reps;
};

}  // namespace

ClusterReport cluster_enumerate(const HPoint& tau0, int64_t N, const mpq_class& eps,
                                const HPoint& xi, bool cyclic_only) {
  return cluster_enumerate_multi(tau0, N, {{xi, eps}}, cyclic_only)[0];
}

std::vector<ClusterReport> cluster_enumerate_multi(
    const HPoint& tau0, int64_t N, const std::vector<std::pair<HPoint, mpq_class>>& targets,
    bool cyclic_only) {
  if (N < 1) throw std::invalid_argument("cluster_enumerate: N must be >= 1");
  mpfr_prec_t prec = tau0.prec();
  PrecisionScope scope(prec);
  Real sqrt3 = const_sqrt3(prec);

  std::vector<TargetCtx> ctx;
  ctx.reserve(targets.size());
  for (const auto& [xi, eps] : targets) {
    Real R = xi.abs();
    if (eps <= 0) throw std::invalid_argument("cluster_enumerate: eps must be positive");
    if (Real(eps) >= sqrt3 / (R * 3 + 2))
      throw std::invalid_argument(
          "cluster_enumerate: eps must satisfy eps < sqrt(3)/(3|xi|+2); the admissible "
          "range of the cluster bound is 0 <= eps <= (Im(xi)/(100 |xi|^3))^2");
    TargetCtx t;
    t.xi = &xi;
    t.eps = eps;
    t.xr = xi.re().to_double();
    t.xi_im = xi.im().to_double();
    t.epsd = mpq_class(eps).get_d();
    t.xi_exact = xi.shadow().has_value();
    ctx.push_back(std::move(t));
  }

  const bool shadowed = tau0.shadow().has_value();
  double x0d = 0, y0d = 0;
  bool fast_ok = false;
  if (shadowed) {
    x0d = tau0.re().to_double();
    y0d = tau0.im().to_double();
    fast_ok = std::isfinite(x0d) && std::isfinite(y0d) && std::fabs(x0d) < 1e5 &&
              y0d > 1e-5 && y0d < 1e5 && N < (int64_t(1) << 26);
    for (const TargetCtx& t : ctx) fast_ok = fast_ok && t.xi_exact;
  }

  // exact evaluation of one orbit point; returns its representatives
  auto exact_point = [&](int64_t m, int64_t l, int64_t n) -> OrbitPointExact {
    const QuadShadow& sh = *tau0.shadow();
    mpq_class x = (mpq_class(m) * sh.x + l) / n;
    x.canonicalize();
    mpq_class y2 = mpq_class(m * m, n * n) * sh.y2;
    y2.canonicalize();
    HPoint P = HPoint::from_exact(x, y2, prec);
    ReduceResult rr = reduce(P);
    OrbitPointExact out;
    out.reduced = *rr.point.shadow();
    out.reps = exact_representatives(out.reduced);
    return out;
  };

  auto record_member = [&](TargetCtx& t, const HeckeMatrix& M, const QuadShadow& red) {
    HPoint reduced = HPoint::from_exact(red.x, red.y2, prec);
    Real best = reduced.dist(*t.xi);
    for (const QuadShadow& rep : exact_representatives(red)) {
      HPoint alt = HPoint::from_exact(rep.x, rep.y2, prec);
      best = min(best, alt.dist(*t.xi));
    }
    t.members.push_back({M, reduced, best});
  };

  // float fallback for tau0 without an exact shadow
  auto float_point = [&](const HeckeMatrix& M) {
    HPoint P = tau_of(M, tau0);
    ReduceResult rr = reduce(P);
    Real band = pow2(-static_cast<long>(prec) / 2, prec);
    Real half(mpq_class(1, 2));
    std::vector<HPoint> reps{rr.point};
    if (abs(rr.point.re() - half) <= band)
      reps.emplace_back(rr.point.re() - 1, rr.point.im());
    Real n2 = rr.point.re() * rr.point.re() + rr.point.im() * rr.point.im();
    if (abs(n2 - 1) <= band) reps.emplace_back(-rr.point.re(), rr.point.im());
    for (TargetCtx& t : ctx) {
      Real best = reps[0].dist(*t.xi);
      for (size_t i = 1; i < reps.size(); ++i) best = min(best, reps[i].dist(*t.xi));
      if (best <= Real(t.eps) + band) t.members.push_back({M, rr.point, best});
    }
  };

  for (int64_t n : divisors_of(N)) {
    int64_t m = N / n;
    for (int64_t l = 0; l < n; ++l) {
      bool cyc = gcd3(m, n, l) == 1;
      if (cyclic_only && !cyc) continue;
      HeckeMatrix M{m, l, n, cyc};
      if (!shadowed) {
        float_point(M);
        continue;
      }
      bool need_exact = true;
      if (fast_ok) {
        double xm = (static_cast<double>(m) * x0d + static_cast<double>(l)) / n;
        double ym = static_cast<double>(m) * y0d / n;
        fastred::Mat64 g64;
        double xr, yr;
        if (fastred::reduce_fast(xm, ym, g64, xr, yr, 1e-9)) {
          need_exact = false;
          for (TargetCtx& t : ctx) {
            double dd = std::hypot(xr - t.xr, yr - t.xi_im);
            if (std::fabs(dd - t.epsd) <= 1e-7) {
              // borderline: settle exactly
              OrbitPointExact op = exact_point(m, l, n);
              bool member = false;
              for (const QuadShadow& rep : op.reps)
                if (exact_dist_cmp(rep, *t.xi->shadow(), t.eps) <= 0) member = true;
              if (member) record_member(t, M, op.reduced);
            } else if (dd < t.epsd) {
              OrbitPointExact op = exact_point(m, l, n);
              record_member(t, M, op.reduced);
            }
          }
        }
      }
      if (need_exact) {
        OrbitPointExact op = exact_point(m, l, n);
        for (TargetCtx& t : ctx) {
          bool member = false;
          if (t.xi_exact) {
            for (const QuadShadow& rep : op.reps)
              if (exact_dist_cmp(rep, *t.xi->shadow(), t.eps) <= 0) member = true;
          } else {
            Real band = pow2(-static_cast<long>(prec) / 2, prec);
            for (const QuadShadow& rep : op.reps) {
              HPoint alt = HPoint::from_exact(rep.x, rep.y2, prec);
              if (alt.dist(*t.xi) <= Real(t.eps) + band) member = true;
            }
          }
          if (member) record_member(t, M, op.reduced);
        }
      }
    }
  }

  // closed-form data shared by every target
  mpz_class Nz(static_cast<long>(N));
  Real sqrtN = sqrt(Real(Nz));
  Real s0(sigma0(Nz)), psi(dedekind_psi(Nz));
  Real tau0_abs = tau0.abs();
  bool in_domain;
  if (tau0.shadow()) {
    const QuadShadow& sh = *tau0.shadow();
    in_domain = ::abs(sh.x) <= mpq_class(1, 2) && sh.x * sh.x + sh.y2 >= 1;
  } else {
    Real tol = pow2(8 - static_cast<long>(prec), prec);
    in_domain = abs(tau0.re()) <= Real(mpq_class(1, 2)) + tol &&
                tau0.re() * tau0.re() + tau0.im() * tau0.im() >= 1 - tol;
  }

  std::vector<ClusterReport> out;
  for (TargetCtx& t : ctx) {
    ClusterReport rep;
    rep.N = N;
    rep.eps = t.eps;
    rep.cyclic_only = cyclic_only;
    Real I = cluster_factor(tau0, *t.xi);
    Real sqeps = sqrt(Real(t.eps));
    rep.bound_lemma = sqrtN * s0 * (1 + I) + const_pi(prec) * const_pi(prec) / 6 * I * sqeps * psi;
    Real R = t.xi->abs();
    rep.bound_prop = Real(10000000L) * tau0_abs * pow(R, 5L) * (sqrtN * s0 + sqeps * psi);
    Real cap = pow(t.xi->im() / (R * R * R * 100), 2L);
    rep.eps_in_lemma_range = Real(t.eps) <= cap;
    rep.tau0_in_domain = in_domain;
    Real count(static_cast<long>(t.members.size()));
    rep.members_within_lemma = count <= rep.bound_lemma;
    rep.members_within_prop = count <= rep.bound_prop;
    rep.members = std::move(t.members);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace unitj
