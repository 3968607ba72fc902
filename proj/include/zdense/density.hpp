#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "zdense/gen_set.hpp"
#include "zdense/recognition.hpp"
#include "zdense/sieves.hpp"
#include "zdense/word.hpp"

namespace zdense {

/* Best-effort positive evidence of density: each witness is independently
   checkable, and a missing witness is never treated as a refutation. */
struct DensityDiagnostics {
    std::optional<RecogWitness> irreducible;     // claim "irreducible_char_poly"
    std::optional<RecogWitness> nonsolvable;     // nontrivial commutator tree
    std::optional<RecogWitness> trace_asymmetry; // claim "nonzero_trace_gap"
};

/* Everything a driver learns about the exceptional primes of the input. */
struct PiReport {
    std::set<uint64_t> pi;       // primes with a proper congruence image
    std::set<uint64_t> pi_tilde; // pi, plus 2 when the mod-4 defect appears
    uint64_t p0 = 0;             // mirror prime used by the witness searches
    std::vector<CandidateReport> sieve_reports;
    std::map<uint64_t, SurjectivityResult> verdicts; // one per candidate
    std::set<uint64_t> undetermined;                 // expected empty
    DensityDiagnostics diagnostics;
};

/* Smallest prime above 3, among the first 25, with a surjective image.
   Downstream witness searches mirror their work modulo this prime.
   Throws Error("NoSurjectivePrimeFound") when the scan runs dry. */
uint64_t find_p0(const GenSet& G, const RecogParams& params = {});

/* The mod-4 adjustment: in degree <= 4 a group surjective mod 2 but not
   mod 4 gets 2 added to its exceptional set; larger degrees pass through. */
std::set<uint64_t> pi_tilde(const GenSet& G, const std::set<uint64_t>& pi,
                            const RecogParams& params = {});

/* Prime-degree driver.  Candidates come from the applicable sieves (order,
   absolute irreducibility and solvable always; monomial from degree 5 up;
   similarity from degree 3 up) and each candidate is settled by the
   surjectivity test; unsettled candidates surface in `undetermined`.
   Throws Error("DegreeNotPrime"), Error("NoSurjectivePrimeFound"), or any
   sieve precondition failure; each of those signals a non-dense input. */
PiReport primes_for_dense(const GenSet& G, const SieveParams& params = {});

/* Even-degree driver for an input with a known transvection, given as a
   word t in the generators.  Candidates are the prime divisors of the Gram
   determinant of the spun normal-closure algebra of t and of a trace gap
   found inside that closure; verdicts use the exact order oracle when it
   can run, and otherwise the transvection-generated criterion: a full
   closure algebra mod p plus a trace-asymmetric element forces the image
   onto all of SL(n,p).  Throws Error("BadParameter") for odd degree,
   Error("NotTransvection"), or Error("NotDense") when the closure algebra
   is not full or no trace gap exists (isometry input). */
PiReport primes_for_dense_transvection(const GenSet& G, const Word& t_word,
                                       const SieveParams& params = {});

/* Witness searches for the three equivalent density criteria in odd prime
   degree.  Throws Error("DegreeNotPrime"). */
DensityDiagnostics density_diagnostics(const GenSet& G,
                                       const SieveParams& params = {});

/* True when the monic integer polynomial (ascending coefficients, leading 1)
   is irreducible modulo one of the first 30 primes, certifying
   irreducibility over Q.  One-sided: false proves nothing. */
bool monic_poly_irreducible_Q(const std::vector<Int>& coeffs);

} // namespace zdense
