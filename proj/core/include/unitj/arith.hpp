#pragma once

// Multiplicative arithmetic functions over exact integers, the Mertens-type
// prime sum, the isogeny-averaging constant lambda_N, and brute-force
// GL2(Z/N) group counts used as oracles for the closed formulas.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "unitj/numeric.hpp"

namespace unitj {

struct Factorization {
  // (prime, exponent), primes strictly increasing
  std::vector<std::pair<mpz_class, unsigned>> factors;

  mpz_class value() const;
};

// Trial division to 10^6, then Pollard rho with Miller-Rabin certification
// (deterministic witness set below 3.3e24, 64 rounds above).
Factorization factorize(const mpz_class& n);

bool is_prime(const mpz_class& n);

mpz_class sigma0(const mpz_class& n);
mpz_class sigma1(const mpz_class& n);
mpz_class euler_phi(const mpz_class& n);
mpz_class dedekind_psi(const mpz_class& n);
unsigned omega(const mpz_class& n);

// sum over p | n of (log p)/p
Real mertens_sum(const mpz_class& n);

// lambda_N = sum (p^a - 1)/((p^2-1) p^(a-1)) log p over p^a || N
Real lambda_autissier(const mpz_class& n);

// |GL2(Z/N)| = phi(N)^2 psi(N) N and the upper-triangular subgroup order
// N phi(N)^2, by the closed formulas.
mpz_class gl2_order(const mpz_class& n);
mpz_class triangular_order(const mpz_class& n);

// Exhaustive matrix-enumeration oracles (N^4 work).
uint64_t gl2_order_bruteforce(uint64_t n);
uint64_t triangular_order_bruteforce(uint64_t n);

struct CyclicCensus {
  uint64_t count;      // distinct cyclic subgroups of order N in (Z/N)^2
  bool transitive;     // GL2(Z/N) acts transitively on them
};

// Enumerates the cyclic order-N subgroups of (Z/N)^2 as element sets and
// checks transitivity of the GL2(Z/N) action by moving the subgroup
// generated by (1,0) onto every other one. Throws std::invalid_argument
// beyond the cap (the work grows like N^4).
CyclicCensus cyclic_subgroup_census(uint64_t n, uint64_t cap = 60);

struct OrbitLowerBound {
  mpq_class raw_ratio;  // psi(N)/index
  mpq_class bound;      // max(1, raw_ratio): a Galois orbit has size >= 1
};

OrbitLowerBound serre_orbit_lower_bound(const mpz_class& n, const mpz_class& index);

}  // namespace unitj
