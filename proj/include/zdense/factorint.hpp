#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "zdense/numeric.hpp"

namespace zdense {

/* d = composite_remainder * prod p^e with every map key certified prime
   (deterministically below 2^64, 64 Miller-Rabin rounds above) and the
   remainder free of factors below the trial-division bound. */
struct PartialFactorization {
    Int input = 1;
    std::map<Int, unsigned> prime_powers;
    Int composite_remainder = 1;

    bool fully_factored() const { return composite_remainder == 1; }
    std::vector<Int> primes() const; // sorted
    Int reconstruct() const;
};

struct FactorBudget {
    uint64_t trial_bound = 100000; // divide by all primes below this
    uint64_t rho_iters = 1000000;  // Pollard-Brent iterations per seed
    /* size gates: beyond these bit lengths an unresolved cofactor goes
       straight to composite_remainder instead of burning the budget */
    unsigned prime_test_bits = 4096;
    unsigned rho_bits = 2048;
};

/* Trial division, then Pollard-Brent rho with f(x) = x^2 + 1 started at
   x0 = 2, 3, 5, 7, 11.  Deterministic in (d, budget). */
PartialFactorization partial_factor(const Int& d, const FactorBudget& budget = {});

/* Draw integers from `run` and fold them with gcd until the remainder
   resolves or max_rounds draws are spent.  At least two draws happen when
   the budget allows (a single witness often carries spurious factors); an
   unresolved remainder stays visible in the result. */
PartialFactorization gcd_refine(const std::function<Int()>& run, int max_rounds,
                                const FactorBudget& budget = {});

} // namespace zdense
