#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zdense/gen_set.hpp"
#include "zdense/mod_matrix.hpp"
#include "zdense/numeric.hpp"
#include "zdense/word.hpp"

namespace zdense {

struct RecogParams {
    uint64_t seed = 1;
    uint64_t bfs_cap = 20000000;   // element cap for exhaustive closure
    uint64_t orbit_cap = 20000000; // point cap for stabilizer chains
    uint64_t word_budget = 2000;   // attempts per witness search
    uint64_t order_bound = 0;      // override for order_bound_k; 0 = use table
};

/* Largest element order over the restricted subgroup classes of SL(n,p) for
   prime degree n (10, 21, 60, 84, 253 for n = 2, 3, 5, 7, 11); an element of
   larger order rules them all out.  0 when n is outside the table. */
uint64_t order_bound_k(int n);

/* Depth of the balanced commutator tree that vanishes on every solvable
   image arising in the restricted classes: delta(n) + 1 with delta = 4, 5, 6
   for n = 2, 3, >= 5. */
int solvable_tree_depth(int n);

/* |<gens>| by exhaustive closure under right multiplication.
   exact = false means the element cap was hit and `order` is meaningless. */
struct OrderResult {
    bool exact = false;
    Int order = 0;
};
OrderResult group_order_bfs(const std::vector<ModMatrix>& gens, uint64_t cap);

/* The closure itself, identity first, in discovery order.
   Throws Error("EnumerationTooLarge") past the cap. */
std::vector<ModMatrix> enumerate_closure(const std::vector<ModMatrix>& gens,
                                         uint64_t cap);

/* |<gens>| as the product of orbit sizes along the stabilizer chain for the
   action on (Z/m)^n with base e_1, ..., e_n (a matrix fixing every base
   point is the identity, so the chain bottoms out at the trivial group).
   Deterministic.  Throws Error("OrbitTooLarge") when m^n > orbit_cap. */
Int group_order_stabilizer_chain(const std::vector<ModMatrix>& gens,
                                 uint64_t orbit_cap = 20000000);

/* Exact image order mod m through whichever oracle fits: stabilizer chain
   when m^n is within orbit_cap, else closure within bfs_cap.
   known = false when both refuse. */
struct OrderOutcome {
    bool known = false;
    Int order = 0;
    std::string method; // "stabilizer_chain" | "bfs" | ""
};
OrderOutcome image_order_oracle(const GenSet& G, uint64_t m,
                                const RecogParams& params = {});

enum class SurjVerdict { Yes, No, Undetermined };

/* A word in the generators together with a machine-checkable claim about its
   image.  Claim grammar (fields separated by ':'):
     "nontrivial_mod:<p>"          image of the word mod p is not the identity
     "order_exceeds_mod:<p>:<k>"   its order mod p exceeds k
     "trace_asymmetric_mod:<p>"    tr(w) != tr(w^-1) mod p
     "infinite_order"              the integer matrix has infinite order
     "nonzero_trace_gap"           tr(w) != tr(w^-1) over Z
     "nontrivial"                  the integer matrix is not the identity */
struct RecogWitness {
    Word word;
    std::string claim;
};

struct SurjectivityResult {
    SurjVerdict verdict = SurjVerdict::Undetermined;
    std::string method; // "exact_order" | "algebra_dimension" | "invariant_form"
                        // | "scaled_invariant_form" | "certificates" | "unresolved"
    std::string note;
    int algebra_dim = -1; // dimension of the spanned algebra mod p, if computed
    Int image_order = 0;  // exact image order, if computed
    std::vector<RecogWitness> witnesses;
};

/* Decide phi_p(G) = SL(n,p) for prime degree n and prime p.  p <= 3 is
   settled by exact order.  Otherwise: algebra dimension < n^2, or a common
   nondegenerate bilinear form fixed by the generators outright or up to
   scalar multipliers (n >= 3), is a proof of "no"; a full certificate bundle
   (full algebra, element of order > k_n, nonvanishing balanced commutator
   tree, trace-asymmetric commutator for n >= 3, and nontrivial [g^k, h^k]
   with k = lcm(1..n) for n >= 5) is a proof of "yes"; failing both, the
   exact oracle decides when it fits the caps, and the verdict is
   Undetermined past them.
   Throws Error("DegreeNotPrime") and Error("CompositeModulus"). */
SurjectivityResult is_surjective_mod_p(const GenSet& G, uint64_t p,
                                       const RecogParams& params = {});

/* phi_m(G) = SL(n, Z/m) by exact order; Error("OrderOracleUnavailable") when
   no oracle fits the caps. */
bool is_surjective_mod_m(const GenSet& G, uint64_t m,
                         const RecogParams& params = {});

/* Nondegenerate Phi over F_p with g Phi g^T = Phi for every g in mats, if
   one can be exhibited from the solution space of the linear system (basis
   vectors, pairwise sums, then seeded random combinations). */
std::optional<ModMatrix> invariant_form(const std::vector<ModMatrix>& mats,
                                        uint64_t p, uint64_t seed = 1);

/* Nondegenerate Phi with g_i Phi g_i^T = lambda_i Phi where not every
   multiplier is 1.  Taking determinants forces lambda_i^n = 1, so the search
   branches over the n-th roots of unity in F_p per matrix, pruning branches
   whose solution space dies.  A hit confines the group generated by mats to
   the conformal stabilizer of Phi, a proper subgroup of SL(n,p) for n >= 3. */
struct ScaledForm {
    ModMatrix form;
    std::vector<uint64_t> multipliers; // one per input matrix, same order
};
std::optional<ScaledForm> scaled_invariant_form(const std::vector<ModMatrix>& mats,
                                                uint64_t p, uint64_t seed = 1);

/* Pairwise generator commutators plus eight seeded random word commutators,
   reduced mod p: the element list behind every similarity check. */
std::vector<ModMatrix> sampled_commutators_mod(const GenSet& G, uint64_t p,
                                               uint64_t seed = 1);

/* Root of the balanced commutator tree over the leaves, the modular mirror
   of balanced_tree_commutator.  Leaf count must be a power of two. */
ModMatrix balanced_tree_fold_mod(const std::vector<ModMatrix>& leaves);

/* Structural predicates of the image mod p, decided on the enumerated
   closure (Error("EnumerationTooLarge") past bfs_cap):
     solvable       derived series reaches the trivial group
     monomial       image permutes a system of n independent lines over an
                    extension field; detected through a nonscalar abelian
                    normal subgroup (sound for absolutely irreducible images
                    of prime degree; false with a note otherwise)
     preserves_form generators fix a common nondegenerate bilinear form
     similarity     commutators of generators fix such a form */
struct ImagePredicates {
    bool solvable = false;
    bool monomial = false;
    bool preserves_form = false;
    bool similarity = false;
    std::string note;
};
ImagePredicates image_predicates(const GenSet& G, uint64_t p,
                                 const RecogParams& params = {});

} // namespace zdense
