#pragma once

#include <cstdint>
#include <vector>

#include "zdense/gen_set.hpp"
#include "zdense/numeric.hpp"
#include "zdense/recognition.hpp"

namespace zdense {

/* A modulus k split against the level M of a dense group: a = gcd(k, M),
   then k = a*b*c with every prime of b dividing a and c the maximal divisor
   of k/a coprime to a.  Mod c the image is all of SL(n, Z_c); the a*b part
   carries whatever the group actually misses. */
struct ModulusSplit {
    uint64_t k = 0;
    uint64_t M = 0;
    uint64_t a = 1;
    uint64_t b = 1;
    uint64_t c = 1;
};

/* The level M is caller-supplied; this module never computes it.  In degree 2
   only prime moduli are handled, so a composite k is refused there. */
ModulusSplit decompose_modulus(uint64_t k, uint64_t M, int degree = 3);

/* Exact |phi_k(G)| through the order oracle.  Throws OrderOracleUnavailable
   when neither the stabilizer chain nor closure enumeration fits the caps,
   and DegreeTwoComposite for composite k in degree 2. */
Int image_order_mod(const GenSet& G, uint64_t k, const RecogParams& params = {});

/* order_mod_ab * |SL(n, Z_c)|: the direct-product prediction for the image
   mod k = a*b*c.  order_mod_ab must be the exact image order mod a*b. */
Int predicted_order(const GenSet& G, const ModulusSplit& split,
                    const Int& order_mod_ab);

/* Exact orders [|phi_p(G)|, |phi_{p^2}(G)|, ..., |phi_{p^emax}(G)|].  Each
   consecutive ratio is verified to be p^e with 0 <= e <= n^2 - 1 and the
   exponents non-decreasing along the ladder; a violation means the oracle
   miscounted and raises InternalError. */
std::vector<Int> prime_power_ladder(const GenSet& G, uint64_t p, int e_max,
                                    const RecogParams& params = {});

} // namespace zdense
