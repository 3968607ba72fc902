#include "zdense/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "zdense/errors.hpp"
#include "zdense/mod_matrix.hpp"
#include "zdense/primes.hpp"

namespace zdense {

ModulusSplit decompose_modulus(uint64_t k, uint64_t M, int degree) {
    if (k < 2) fail("BadParameter", "modulus must be at least 2, got " + std::to_string(k));
    if (M < 1) fail("BadParameter", "level must be positive");
    if (degree < 2) fail("BadParameter", "degree must be at least 2");
    if (degree == 2 && !is_prime_u64(k))
        fail("DegreeTwoComposite",
             "degree 2 images are described for prime moduli only, got " +
                 std::to_string(k));

    ModulusSplit s;
    s.k = k;
    s.M = M;
    s.a = std::gcd(k, M);
    // peel shared primes off k/a until what is left is coprime to a
    s.c = k / s.a;
    for (uint64_t g = std::gcd(s.c, s.a); g > 1; g = std::gcd(s.c, s.a)) s.c /= g;
    s.b = k / (s.a * s.c);
    return s;
}

Int image_order_mod(const GenSet& G, uint64_t k, const RecogParams& params) {
    if (k == 0) fail("BadParameter", "modulus must be positive");
    if (G.degree() == 2 && k > 1 && !is_prime_u64(k))
        fail("DegreeTwoComposite",
             "degree 2 images are described for prime moduli only, got " +
                 std::to_string(k));
    /* past the chain's point budget, closure enumeration only pays off for
       small images; a huge cap would grind for minutes before refusing */
    RecogParams capped = params;
    capped.bfs_cap = std::min<uint64_t>(capped.bfs_cap, 500000);
    OrderOutcome oc = image_order_oracle(G, k, capped);
    if (!oc.known)
        fail("OrderOracleUnavailable",
             "no exact oracle fits modulus " + std::to_string(k) +
                 " in degree " + std::to_string(G.degree()) + " within the caps");
    return oc.order;
}

Int predicted_order(const GenSet& G, const ModulusSplit& split,
                    const Int& order_mod_ab) {
    if (split.k == 0 || split.a * split.b * split.c != split.k)
        fail("BadParameter", "modulus split is inconsistent");
    if (order_mod_ab < 1) fail("BadParameter", "image order must be positive");
    return order_mod_ab * sl_order(G.degree(), split.c);
}

std::vector<Int> prime_power_ladder(const GenSet& G, uint64_t p, int e_max,
                                    const RecogParams& params) {
    if (!is_prime_u64(p)) fail("BadParameter", "ladder base must be prime");
    if (e_max < 1) fail("BadParameter", "ladder needs at least one rung");
    if (G.degree() == 2 && e_max > 1)
        fail("DegreeTwoComposite",
             "degree 2 images are described for prime moduli only; a ladder "
             "past the first rung needs modulus " + std::to_string(p) + "^2");
    unsigned __int128 top = 1;
    for (int i = 0; i < e_max; i++) {
        top *= p;
        if (top > (unsigned __int128)UINT64_MAX)
            fail("BadParameter", "modulus " + std::to_string(p) + "^" +
                                     std::to_string(e_max) + " overflows");
    }

    int n = G.degree();
    std::vector<Int> orders;
    orders.reserve(e_max);
    uint64_t m = 1;
    for (int i = 1; i <= e_max; i++) {
        m *= p;
        orders.push_back(image_order_mod(G, m, params));
    }

    // the kernel of each descent embeds in the additive group of traceless
    // matrices over F_p, and its dimension can only grow with the rung
    int prev_e = 0;
    for (int i = 1; i < e_max; i++) {
        if (orders[i] % orders[i - 1] != 0)
            fail("InternalError", "ladder orders fail divisibility at rung " +
                                      std::to_string(i + 1));
        Int r = orders[i] / orders[i - 1];
        int e = 0;
        while (r % p == 0) {
            r /= p;
            e++;
        }
        if (r != 1 || e > n * n - 1 || e < prev_e)
            fail("InternalError",
                 "ladder ratio at rung " + std::to_string(i + 1) +
                     " is not an admissible power of " + std::to_string(p));
        prev_e = e;
    }
    return orders;
}

} // namespace zdense
