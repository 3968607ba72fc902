#include "zdense/primes.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "zdense/errors.hpp"

namespace zdense {

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t bound = 100000;
        std::vector<bool> composite(bound, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i < bound; i++) {
            if (composite[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < bound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((unsigned __int128)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; s++; }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; i++) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

bool is_prime(const Int& n, unsigned rounds) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return boost::multiprecision::miller_rabin_test(n, rounds);
}

uint64_t next_prime_after(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) c++;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

uint64_t euler_phi_u64(uint64_t n) {
    uint64_t result = n;
    for (uint64_t p = 2; p * p <= n; p++) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

uint64_t torsion_exponent(int degree) {
    if (degree < 1) fail("BadParameter", "torsion_exponent: degree must be positive");
    /* phi(m) >= sqrt(m/2), so phi(m) <= n forces m <= 2(n+1)^2. */
    uint64_t bound = 2 * uint64_t(degree + 1) * uint64_t(degree + 1) + 1;
    Int l = 1;
    for (uint64_t m = 1; m <= bound; m++) {
        if (euler_phi_u64(m) <= uint64_t(degree)) l = lcm(l, Int(m));
    }
    return to_u64(l);
}

namespace {

/* Brent's cycle-finding variant of Pollard rho with f(x) = x^2 + c.  Only for
   64-bit composites that survived trial division. */
uint64_t rho_u64(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; c++) {
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = y;
        const uint64_t m = 128;
        uint64_t r = 1;
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; i++) y = (mulmod_u64(y, y, n) + c) % n;
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; i++) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r *= 2;
        }
        if (d == n) {
            /* backtrack one step at a time */
            do {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_u64_rec(uint64_t n, std::map<uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[n]++;
        return;
    }
    uint64_t d = rho_u64(n);
    factor_u64_rec(d, out);
    factor_u64_rec(n / d, out);
}

} // namespace

std::map<uint64_t, int> factor_u64(uint64_t n) {
    if (n == 0) fail("BadParameter", "factor_u64: zero has no factorization");
    std::map<uint64_t, int> out;
    for (uint32_t p : small_primes()) {
        if (uint64_t(p) * p > n) break;
        while (n % p == 0) { out[p]++; n /= p; }
    }
    factor_u64_rec(n, out);
    return out;
}

} // namespace zdense
