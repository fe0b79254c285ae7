#pragma once

// Hecke-orbit enumeration: the upper-triangular matrices (m l; 0 n) with
// N = mn and 0 <= l < n, the orbit points tau_M = (m tau0 + l)/n, and the
// brute-force cluster set Lambda(tau0; N; eps) of orbit points whose
// fundamental-domain representative lands within eps of a fixed xi,
// together with the closed-form bounds it is checked against.

#include <cstdint>
#include <vector>

#include "unitj/halfplane.hpp"
#include "unitj/numeric.hpp"

namespace unitj {

struct HeckeMatrix {
  int64_t m, l, n;  // N = m n, 0 <= l < n
  bool cyclic;      // gcd(m, n, l) = 1
};

// All (m, l, n) with N = mn, 0 <= l < n, in (n, l) order; sigma_1(N) of
// them, psi(N) with cyclic_only.
std::vector<HeckeMatrix> hecke_matrices(int64_t N, bool cyclic_only = false);

// (m tau0 + l)/n
HPoint tau_of(const HeckeMatrix& M, const HPoint& tau0);

// The cluster factor
//   I(tau0, xi) = 64 pi (4|Re tau0| + 17|xi|) (50|xi|^2 Im tau0 + 1)
//                 max{(sqrt(2 Im xi) + sqrt(Im tau0))/sqrt(Im tau0),
//                     5 |xi|^2 / Im tau0}.
Real cluster_factor(const HPoint& tau0, const HPoint& xi);

// Per-matrix multiplicity cap min(6|xi| n / max{a^2,c^2} + 1,
// 50 |xi|^2 Im(tau0) m + 1) for the number of l sharing one reducing
// matrix.
Real taul_interval_bound(const HPoint& xi, int64_t m, int64_t n, int64_t a, int64_t c,
                         const Real& tau0_im);

struct ClusterMember {
  HeckeMatrix M;
  HPoint reduced;
  Real distance;
};

struct ClusterReport {
  int64_t N;
  mpq_class eps;
  std::vector<ClusterMember> members;
  Real bound_lemma;          // sqrt(N) sigma0 (1 + I) + (pi^2/6) I sqrt(eps) psi
  Real bound_prop;           // 1e7 |tau0| |xi|^5 (sqrt(N) sigma0 + sqrt(eps) psi)
  bool eps_in_lemma_range;   // eps <= (Im xi / (100 |xi|^3))^2
  bool tau0_in_domain;       // tau0 in closed F (the prop bound applies)
  bool members_within_lemma;
  bool members_within_prop;
  bool cyclic_only;
};

// Enumerates the full orbit, reduces every point, and records members
// within eps of xi (boundary ties count as members). eps is taken exactly
// rational so membership at the boundary is decided exactly whenever tau0
// and xi carry exact shadows; other points use a 2^{-prec/2} band,
// counting inward. Requires eps < sqrt(3)/(3|xi|+2), the range the
// member-matrix checks need; the Lambda-lemma range is reported as a flag.
ClusterReport cluster_enumerate(const HPoint& tau0, int64_t N, const mpq_class& eps,
                                const HPoint& xi, bool cyclic_only = false);

// Same enumeration against several (xi, eps) targets, reducing each orbit
// point once.
std::vector<ClusterReport> cluster_enumerate_multi(
    const HPoint& tau0, int64_t N, const std::vector<std::pair<HPoint, mpq_class>>& targets,
    bool cyclic_only = false);

}  // namespace unitj
