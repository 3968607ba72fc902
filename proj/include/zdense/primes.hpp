#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "zdense/numeric.hpp"

namespace zdense {

/* All primes below 100000, computed once.  This is the trial-division base
   used by the partial factorizer and by sl_order. */
const std::vector<uint32_t>& small_primes();

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

/* Deterministic Miller-Rabin for 64-bit inputs (12 fixed witnesses cover the
   whole range). */
bool is_prime_u64(uint64_t n);

/* Primality for arbitrary precision: deterministic below 2^64, Miller-Rabin
   with `rounds` witnesses above. */
bool is_prime(const Int& n, unsigned rounds = 64);

uint64_t next_prime_after(uint64_t n);

uint64_t euler_phi_u64(uint64_t n);

/* lcm of all m with phi(m) <= degree: the exponent bounding every torsion
   element of SL(degree, Z).  12 for degrees 2-3, 120 for degrees 4-5. */
uint64_t torsion_exponent(int degree);

/* Complete factorization of a 64-bit integer (trial division plus Brent's
   rho).  Used for small moduli (sl_order, modulus decompositions), not for
   the sieve witness integers, which go through factorint. */
std::map<uint64_t, int> factor_u64(uint64_t n);

} // namespace zdense
