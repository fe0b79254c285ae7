#include "unitj/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace unitj {

namespace {

// Miller-Rabin to the given bases; n odd > 2.
bool miller_rabin(const mpz_class& n, const std::vector<mpz_class>& bases) {
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (const mpz_class& a0 : bases) {
    mpz_class a = a0 % n;
    if (a <= 1) continue;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

mpz_class pollard_rho(const mpz_class& n, unsigned long c0) {
  mpz_class x(2), y(2), d(1), c(c0);
  auto f = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    mpz_class diff = x > y ? x - y : y - x;
    if (diff == 0) return 0;  // cycle without factor; retry with new c
    mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
  }
  return d == n ? mpz_class(0) : d;
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out);

void split(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  for (unsigned long c = 1;; ++c) {
    mpz_class d = pollard_rho(n, c);
    if (d != 0) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  mpz_class m = n;
  for (unsigned long p = 2; p <= 1000000UL && mpz_class(p) * p <= m;
       p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out[mpz_class(p)] += 1;
      m /= p;
    }
  }
  if (m == 1) return;
  if (is_prime(m))
    out[m] += 1;
  else
    split(m, out);
}

// cached log p for small primes, all at 256 bits
const Real& log_of_prime(unsigned long p) {
  static std::mutex mu;
  static std::map<unsigned long, Real> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) {
    Real lp(256, 0);
    mpfr_set_ui(lp.raw(), p, MPFR_RNDN);
    mpfr_log(lp.raw(), lp.raw(), MPFR_RNDN);
    it = cache.emplace(p, lp).first;
  }
  return it->second;
}

}  // namespace

mpz_class Factorization::value() const {
  mpz_class v(1);
  for (const auto& [p, e] : factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  // deterministic for n < 3.317e24 with the first twelve prime bases
  static const mpz_class det_limit("3317044064679887385961981");
  std::vector<mpz_class> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < det_limit) return miller_rabin(n, bases);
  for (unsigned long k = 41; bases.size() < 64 + 12; k += 2) bases.emplace_back(k);
  return miller_rabin(n, bases);
}

Factorization factorize(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::map<mpz_class, unsigned> m;
  factor_into(n, m);
  Factorization f;
  for (auto& [p, e] : m) f.factors.emplace_back(p, e);
  return f;
}

mpz_class sigma0(const mpz_class& n) {
  mpz_class r(1);
  for (const auto& [p, e] : factorize(n).factors) r *= e + 1;
  return r;
}

mpz_class sigma1(const mpz_class& n) {
  mpz_class r(1);
  for (const auto& [p, e] : factorize(n).factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e + 1);
    r *= (pe - 1) / (p - 1);
  }
  return r;
}

mpz_class euler_phi(const mpz_class& n) {
  mpz_class r(1);
  for (const auto& [p, e] : factorize(n).factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
    r *= pe * (p - 1);
  }
  return r;
}

mpz_class dedekind_psi(const mpz_class& n) {
  mpz_class r(1);
  for (const auto& [p, e] : factorize(n).factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
    r *= pe * (p + 1);
  }
  return r;
}

unsigned omega(const mpz_class& n) {
  return static_cast<unsigned>(factorize(n).factors.size());
}

Real mertens_sum(const mpz_class& n) {
  if (n < 2) throw std::invalid_argument("mertens_sum: n must be >= 2");
  Real s(0L);
  for (const auto& [p, e] : factorize(n).factors) {
    Real lp = p.fits_ulong_p() ? log_of_prime(p.get_ui()) : log(Real(p));
    s += lp / Real(p);
  }
  return s;
}

Real lambda_autissier(const mpz_class& n) {
  if (n < 2) throw std::invalid_argument("lambda_autissier: n must be >= 2");
  Real s(0L);
  for (const auto& [p, e] : factorize(n).factors) {
    mpz_class pa, pam1;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), e);
    mpz_pow_ui(pam1.get_mpz_t(), p.get_mpz_t(), e - 1);
    mpq_class coeff(pa - 1, (p * p - 1) * pam1);
    coeff.canonicalize();
    Real lp = p.fits_ulong_p() ? log_of_prime(p.get_ui()) : log(Real(p));
    s += Real(coeff) * lp;
  }
  return s;
}

mpz_class gl2_order(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("gl2_order: n must be >= 1");
  if (n == 1) return 1;
  mpz_class phi = euler_phi(n);
  return phi * phi * dedekind_psi(n) * n;
}

mpz_class triangular_order(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("triangular_order: n must be >= 1");
  if (n == 1) return 1;
  mpz_class phi = euler_phi(n);
  return n * phi * phi;
}

namespace {
inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

uint64_t gl2_order_bruteforce(uint64_t n) {
  if (n == 0) throw std::invalid_argument("gl2_order_bruteforce: n must be >= 1");
  if (n == 1) return 1;
  uint64_t count = 0;
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b)
      for (uint64_t c = 0; c < n; ++c)
        for (uint64_t d = 0; d < n; ++d) {
          uint64_t det = (a * d % n + n - b * c % n) % n;
          if (gcd_u64(det, n) == 1) ++count;
        }
  return count;
}

uint64_t triangular_order_bruteforce(uint64_t n) {
  if (n == 0) throw std::invalid_argument("triangular_order_bruteforce: n must be >= 1");
  if (n == 1) return 1;
  uint64_t count = 0;
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b)
      for (uint64_t d = 0; d < n; ++d) {
        uint64_t det = a * d % n;
        if (gcd_u64(det, n) == 1) ++count;
      }
  return count;
}

CyclicCensus cyclic_subgroup_census(uint64_t n, uint64_t cap) {
  if (n == 0) throw std::invalid_argument("cyclic_subgroup_census: n must be >= 1");
  if (n > cap)
    throw std::invalid_argument("cyclic_subgroup_census: n exceeds the enumeration cap");
  if (n == 1) return {1, true};

  // subgroups as sorted element sets, elements encoded a*n + b
  std::set<std::vector<uint64_t>> subgroups;
  std::vector<uint64_t> generator_of;  // one generator (encoded) per subgroup
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b) {
      if (gcd_u64(gcd_u64(a, b), n) != 1) continue;  // element order < n
      std::vector<uint64_t> elems;
      elems.reserve(n);
      uint64_t x = 0, y = 0;
      for (uint64_t k = 0; k < n; ++k) {
        elems.push_back(x * n + y);
        x = (x + a) % n;
        y = (y + b) % n;
      }
      std::sort(elems.begin(), elems.end());
      if (subgroups.insert(elems).second) generator_of.push_back(a * n + b);
    }

  // transitivity: some invertible matrix must send <(1,0)> onto each
  // subgroup; its first column is then a generator (a,c) of the target
  bool transitive = true;
  for (uint64_t enc : generator_of) {
    uint64_t a = enc / n, c = enc % n;
    bool hit = false;
    for (uint64_t b = 0; b < n && !hit; ++b)
      for (uint64_t d = 0; d < n && !hit; ++d) {
        uint64_t det = (a * d % n + n - b * c % n) % n;
        if (gcd_u64(det, n) == 1) hit = true;
      }
    if (!hit) {
      transitive = false;
      break;
    }
  }
  return {subgroups.size(), transitive};
}

OrbitLowerBound serre_orbit_lower_bound(const mpz_class& n, const mpz_class& index) {
  if (n < 1 || index < 1)
    throw std::invalid_argument("serre_orbit_lower_bound: need n >= 1 and index >= 1");
  mpq_class ratio(dedekind_psi(n), index);
  ratio.canonicalize();
  return {ratio, std::max(mpq_class(1), ratio)};
}

}  // namespace unitj
