#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zdense/factorint.hpp"
#include "zdense/gen_set.hpp"
#include "zdense/recognition.hpp"
#include "zdense/word.hpp"

namespace zdense {

/* Shared knobs for the six candidate sieves.  A zero in the first three
   fields means "use the table value for the degree". */
struct SieveParams {
    uint64_t sym_exponent = 0; // lcm(1..n)
    int delta = 0;             // derived-length bound: 4, 5, 6 for n = 2, 3, >= 5
    uint64_t order_bound = 0;  // element-order bound k_n
    /* witness searches run mod p0 first and only lift hits; pick a prime
       where the image is expected to be full (the density driver passes its
       scan result).  0 falls back to 97. */
    uint64_t p0 = 0;
    uint64_t seed = 1;
    uint64_t word_budget = 2000;
    uint64_t bfs_cap = 20000000;
    uint64_t orbit_cap = 20000000;
    FactorBudget factor_budget;
};

int solvable_delta(int n);    // 4, 5, 6 for n = 2, 3, >= 5
uint64_t sym_exponent(int n); // lcm(1..n), the exponent of Sym(n)

enum class SieveVerdict { In, Out, Deferred };
const char* verdict_name(SieveVerdict v); // "in" | "out" | "deferred"

/* Outcome of one sieve: the witness words with their claims, the witness
   integer d (a gcd across up to three draws for every sieve except the
   order sieve, where it is the lcm l), its partial factorization, the
   candidate primes = primes of the factored part, and a per-candidate
   refinement verdict.  "deferred" verdicts are settled later by the
   surjectivity filter. */
struct CandidateReport {
    std::string sieve;
    std::vector<RecogWitness> witnesses;
    Int d = 0;
    PartialFactorization factorization;
    std::vector<uint64_t> candidates;
    std::map<uint64_t, SieveVerdict> refined;
    std::string notes;
};

// the recognition knobs shared with SieveParams, copied over
RecogParams recognition_params(const SieveParams& params);

/* Copies factorization.input into d, lists the factored primes as
   candidates, and notes an unfactored remainder.  The density drivers reuse
   it for their normal-closure reports. */
void finish_candidate_report(CandidateReport& rep);

// one witness draw: the word found and the integer it certifies
using SieveDraw = std::function<std::optional<std::pair<Word, Int>>()>;

/* Shared shape of the gcd-style sieves: one mandatory witness, then
   gcd_refine pulls up to two more draws to strip spurious factors.  A spent
   budget repeats the last value, which is gcd-neutral.  Sound because a true
   in-prime divides every draw of its sieve. */
CandidateReport gcd_candidate_report(const std::string& sieve,
                                     const std::string& claim,
                                     const std::string& err,
                                     const std::string& err_msg,
                                     const SieveParams& params,
                                     const SieveDraw& draw);

/* Primes p with |phi_p(G)| <= k, from an infinite-order element h: with
   m_i = gcd of the nonzero entries of h^i - 1 and l = lcm(m_1..m_k), any
   such p divides l.  Refinement enumerates the image with element cap k.
   Throws Error("NoInfiniteOrderElement") when the budget finds no h. */
CandidateReport primes_for_order(const GenSet& G, uint64_t k,
                                 const SieveParams& params = {});

/* Primes p where the image mod p is not absolutely irreducible: divisors of
   the Gram determinant of a Q-basis of the enveloping algebra, gcd-refined
   over reshuffled bases.  Refinement: in iff the spanned algebra mod p has
   dimension < n^2.  Throws Error("NotAbsolutelyIrreducible") when the
   rational algebra itself is not full. */
CandidateReport primes_for_abs_irreducible(const GenSet& G,
                                           const SieveParams& params = {});

/* Primes p where the image mod p can be monomial (over the algebraic
   closure): divisors of gcd(entries of [g^k, h^k] - 1) with k the exponent
   of Sym(n), since k-th powers of monomial matrices are diagonal.  Degree
   must be a prime >= 5 (Error("DegreeSkip"): for n <= 3 the solvable sieve
   subsumes this one).  Throws Error("WitnessNotFound") when every sampled
   power commutator is trivial. */
CandidateReport primes_for_monomial(const GenSet& G,
                                    const SieveParams& params = {});

/* Primes p where the image mod p can be solvable of derived length <= delta:
   divisors of gcd(entries of g - 1) for a nontrivial balanced commutator
   tree g of depth delta + 1, which vanishes on every such image.
   Refinement: in iff the image is solvable and a proper subgroup.  Throws
   Error("SolvableWitnessNotFound"). */
CandidateReport primes_for_solvable(const GenSet& G, int delta = 0,
                                    const SieveParams& params = {});

/* Primes p where the image mod p can fix a nondegenerate bilinear form:
   divisors of a = tr(h) - tr(h^-1) for a witness h, since isometries have
   symmetric traces.  Refinement solves the form system mod p exactly.
   Throws Error("WitnessNotFound") (symplectic or orthogonal input) and
   Error("NotAbsolutelyIrreducible"). */
CandidateReport primes_for_isometry(const GenSet& G,
                                    const SieveParams& params = {});

/* Primes p where the image mod p can normalize a form up to scalars: the
   commutator subgroup of a similarity group consists of isometries, so the
   trace test runs on commutator witnesses only.  Degree 2 is skipped
   (SL(2,p) is its own symplectic group): Error("DegreeSkip"). */
CandidateReport primes_for_similarity(const GenSet& G,
                                      const SieveParams& params = {});

} // namespace zdense
