#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <limits>
#include <string>

namespace zdense {

/* GMP-backed arbitrary precision integers and rationals.  Matrix entries in
   long commutator words reach hundreds of thousands of digits, which cpp_int
   handles poorly; mpz is the right backend. */
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline bool fits_u64(const Int& x) {
    return x >= 0 && x <= Int(std::numeric_limits<uint64_t>::max());
}

inline uint64_t to_u64(const Int& x) { return x.convert_to<uint64_t>(); }

/* SplitMix64; used to derive independent per-task seeds from the run seed so
   that results do not depend on thread scheduling. */
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt + 0x51ed2701));
}

} // namespace zdense
