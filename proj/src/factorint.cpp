#include "zdense/factorint.hpp"

#include "zdense/errors.hpp"
#include "zdense/primes.hpp"

namespace zdense {

std::vector<Int> PartialFactorization::primes() const {
    std::vector<Int> out;
    for (const auto& [p, e] : prime_powers) out.push_back(p);
    return out;
}

Int PartialFactorization::reconstruct() const {
    Int v = composite_remainder;
    for (const auto& [p, e] : prime_powers)
        for (unsigned i = 0; i < e; i++) v *= p;
    return v;
}

namespace {

unsigned bit_length(const Int& v) { return unsigned(boost::multiprecision::msb(v)) + 1; }

/* Pollard-Brent with f(x) = x^2 + 1 and batched gcds; returns a nontrivial
   factor of odd composite m, or 0 if the iteration budget runs out. */
Int rho_brent(const Int& m, uint64_t x0, uint64_t max_iters) {
    Int y = x0, q = 1, g = 1, x = 0, ys = 0;
    const uint64_t batch = 128;
    uint64_t r = 1, spent = 0;
    while (g == 1 && spent < max_iters) {
        x = y;
        for (uint64_t i = 0; i < r && spent < max_iters; i++, spent++) y = (y * y + 1) % m;
        uint64_t k = 0;
        while (k < r && g == 1 && spent < max_iters) {
            ys = y;
            uint64_t steps = std::min(batch, r - k);
            for (uint64_t i = 0; i < steps && spent < max_iters; i++, spent++) {
                y = (y * y + 1) % m;
                q = q * abs(x - y) % m;
            }
            g = gcd(q, m);
            k += batch;
        }
        r *= 2;
    }
    if (g == m) {
        // batch overshot the collision; replay one step at a time
        do {
            ys = (ys * ys + 1) % m;
            g = gcd(abs(x - ys), m);
        } while (g == 1);
    }
    if (g == 1 || g == m) return 0;
    return g;
}

void add_prime(PartialFactorization& pf, const Int& p, unsigned e) { pf.prime_powers[p] += e; }

/* Factor v (all prime factors >= trial bound) into pf, recursing through
   rho splits; unresolvable parts multiply into composite_remainder. */
void crack(PartialFactorization& pf, Int v, const FactorBudget& budget) {
    std::vector<Int> work{std::move(v)};
    while (!work.empty()) {
        Int m = std::move(work.back());
        work.pop_back();
        if (m == 1) continue;
        if (fits_u64(m)) {
            for (auto [p, e] : factor_u64(to_u64(m))) add_prime(pf, Int(p), e);
            continue;
        }
        if (bit_length(m) > budget.prime_test_bits) {
            pf.composite_remainder *= m;
            continue;
        }
        if (is_prime(m)) {
            add_prime(pf, m, 1);
            continue;
        }
        Int split = 0;
        if (bit_length(m) <= budget.rho_bits) {
            for (uint64_t x0 : {2, 3, 5, 7, 11}) {
                split = rho_brent(m, x0, budget.rho_iters);
                if (split != 0) break;
            }
        }
        if (split == 0) {
            pf.composite_remainder *= m;
            continue;
        }
        work.push_back(m / split);
        work.push_back(std::move(split));
    }
}

} // namespace

PartialFactorization partial_factor(const Int& d, const FactorBudget& budget) {
    if (d < 1) fail("BadParameter", "can only factor positive integers, got " + d.str());
    PartialFactorization pf;
    pf.input = d;
    Int r = d;
    for (uint64_t p : small_primes()) {
        if (p >= budget.trial_bound) break;
        if (Int(p) * p > r) break;
        unsigned e = 0;
        while (r % p == 0) {
            r /= p;
            e++;
        }
        if (e) add_prime(pf, Int(p), e);
    }
    if (r > 1) {
        // a remainder below the square of the trial bound must be prime
        if (fits_u64(r) && to_u64(r) < budget.trial_bound * budget.trial_bound)
            add_prime(pf, r, 1);
        else
            crack(pf, r, budget);
    }
    return pf;
}

PartialFactorization gcd_refine(const std::function<Int()>& run, int max_rounds,
                                const FactorBudget& budget) {
    if (max_rounds < 1) fail("BadParameter", "need at least one refinement round");
    auto draw = [&] {
        Int v = run();
        if (v < 1) fail("BadParameter", "refinement source produced " + v.str());
        return v;
    };
    Int d = draw();
    PartialFactorization pf = partial_factor(d, budget);
    for (int round = 2; round <= max_rounds; round++) {
        if (round > 2 && pf.fully_factored()) break; // second draw always happens
        d = gcd(d, draw());
        pf = partial_factor(d, budget);
    }
    return pf;
}

} // namespace zdense
