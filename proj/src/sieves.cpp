#include "zdense/sieves.hpp"

#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "zdense/envelope.hpp"
#include "zdense/errors.hpp"
#include "zdense/primes.hpp"
#include "zdense/sampler.hpp"

namespace zdense {

int solvable_delta(int n) {
    if (n <= 2) return 4;
    if (n == 3) return 5;
    return 6;
}

uint64_t sym_exponent(int n) {
    uint64_t k = 1;
    for (int i = 2; i <= n; i++) k = std::lcm(k, uint64_t(i));
    return k;
}

const char* verdict_name(SieveVerdict v) {
    switch (v) {
        case SieveVerdict::In: return "in";
        case SieveVerdict::Out: return "out";
        case SieveVerdict::Deferred: return "deferred";
    }
    return "?";
}

RecogParams recognition_params(const SieveParams& params) {
    RecogParams rp;
    rp.seed = params.seed;
    rp.bfs_cap = params.bfs_cap;
    rp.orbit_cap = params.orbit_cap;
    rp.word_budget = params.word_budget;
    rp.order_bound = params.order_bound;
    return rp;
}

namespace {

uint64_t mirror_prime(const SieveParams& params) {
    uint64_t p0 = params.p0 ? params.p0 : 97;
    if (!is_prime_u64(p0))
        fail("BadParameter", "mirror prime " + std::to_string(p0) + " is not prime");
    return p0;
}

void note_append(std::string& notes, const std::string& s) {
    if (!notes.empty()) notes += "; ";
    notes += s;
}

} // namespace

void finish_candidate_report(CandidateReport& rep) {
    rep.d = rep.factorization.input;
    for (const Int& p : rep.factorization.primes()) {
        if (p > Int(std::numeric_limits<uint64_t>::max())) {
            note_append(rep.notes,
                        "prime " + p.str() + " exceeds the machine modulus, not refined");
            continue;
        }
        rep.candidates.push_back(p.convert_to<uint64_t>());
    }
    if (!rep.factorization.fully_factored())
        note_append(rep.notes,
                    "composite remainder left unfactored (" +
                        std::to_string(msb(rep.factorization.composite_remainder) + 1) +
                        " bits)");
}

CandidateReport gcd_candidate_report(const std::string& sieve,
                                     const std::string& claim,
                                     const std::string& err,
                                     const std::string& err_msg,
                                     const SieveParams& params,
                                     const SieveDraw& draw) {
    CandidateReport rep;
    rep.sieve = sieve;
    auto first = draw();
    if (!first) fail(err, err_msg);
    rep.witnesses.push_back({first->first, claim});
    Int last = first->second;
    bool served = false;
    auto feed = [&]() -> Int {
        if (!served) {
            served = true;
            return last;
        }
        if (auto next = draw()) {
            rep.witnesses.push_back({next->first, claim});
            last = next->second;
        }
        return last;
    };
    rep.factorization = gcd_refine(feed, 3, params.factor_budget);
    finish_candidate_report(rep);
    return rep;
}

namespace {

void require_full_algebra(const GenSet& G) {
    AlgebraBasis basis = algebra_basis_Q(G);
    int n = G.degree();
    if (!basis.full())
        fail("NotAbsolutelyIrreducible",
             "enveloping algebra has dimension " + std::to_string(basis.dim()) +
                 " < " + std::to_string(n * n));
}

} // namespace

CandidateReport primes_for_order(const GenSet& G, uint64_t k,
                                 const SieveParams& params) {
    if (k < 1) fail("BadParameter", "order sieve needs a bound k >= 1");
    uint64_t p0 = mirror_prime(params);
    CandidateReport rep;
    rep.sieve = "order";

    uint64_t E = torsion_exponent(G.degree());
    WordSampler s(mix_seed(params.seed, 0x6f726465ULL), G.count());
    std::optional<Word> hw;
    for (uint64_t t = 0; t < params.word_budget; t++) {
        Word w = s.next();
        /* torsion orders divide E, so a nonidentity E-th power mod p0
           already proves infinite order over Z */
        if (!G.eval_mod(w, p0).pow(E).is_identity()) {
            hw = w;
            break;
        }
        s.note_failure();
    }
    if (!hw)
        fail("NoInfiniteOrderElement",
             "no infinite-order element within the word budget");
    rep.witnesses.push_back({*hw, "infinite_order"});

    IntMatrix h = G.eval(*hw);
    IntMatrix id = IntMatrix::identity(G.degree());
    IntMatrix cur = id;
    Int l = 1;
    for (uint64_t i = 1; i <= k; i++) {
        cur = cur * h;
        Int mi = (cur - id).gcd_nonzero_entries();
        if (mi > 0) l = lcm(l, mi);
    }
    rep.factorization = partial_factor(l, params.factor_budget);
    finish_candidate_report(rep);

    for (uint64_t p : rep.candidates) {
        auto r = group_order_bfs(G.reduced_gens(p), k);
        rep.refined[p] =
            r.exact && r.order <= Int(k) ? SieveVerdict::In : SieveVerdict::Out;
    }
    return rep;
}

CandidateReport primes_for_abs_irreducible(const GenSet& G,
                                           const SieveParams& params) {
    AlgebraBasis basis = algebra_basis_Q(G);
    int n = G.degree();
    if (!basis.full())
        fail("NotAbsolutelyIrreducible",
             "enveloping algebra has dimension " + std::to_string(basis.dim()) +
                 " < " + std::to_string(n * n));

    CandidateReport rep;
    rep.sieve = "abs_irreducible";
    int round = 0;
    auto feed = [&]() -> Int {
        if (round++ == 0) return abs(basis.gram_det);
        AlgebraBasis respun = algebra_basis_Q(G, mix_seed(params.seed, uint64_t(round)));
        return abs(respun.gram_det);
    };
    rep.factorization = gcd_refine(feed, 4, params.factor_budget);
    finish_candidate_report(rep);
    note_append(rep.notes, "gcd over " + std::to_string(round) + " spun bases");

    for (uint64_t p : rep.candidates)
        rep.refined[p] = algebra_dim_mod(G, p) < n * n ? SieveVerdict::In
                                                       : SieveVerdict::Out;
    return rep;
}

CandidateReport primes_for_monomial(const GenSet& G, const SieveParams& params) {
    int n = G.degree();
    if (n <= 3)
        fail("DegreeSkip", "the solvable sieve subsumes the monomial sieve for degree <= 3");
    if (!is_prime_u64(uint64_t(n)))
        fail("DegreeSkip", "monomial sieve needs prime degree");
    uint64_t p0 = mirror_prime(params);
    uint64_t k = params.sym_exponent ? params.sym_exponent : sym_exponent(n);

    WordSampler s(mix_seed(params.seed, 0x6d6f6e6fULL), G.count());
    uint64_t used = 0;
    SieveDraw draw = [&]() -> std::optional<std::pair<Word, Int>> {
        while (used < params.word_budget) {
            used++;
            Word w1 = s.next(), w2 = s.next();
            ModMatrix a = G.eval_mod(w1, p0).pow(k);
            ModMatrix b = G.eval_mod(w2, p0).pow(k);
            if (a * b == b * a) { // commuting k-th powers: no witness here
                s.note_failure();
                continue;
            }
            IntMatrix A = G.eval(w1).pow(k);
            IntMatrix B = G.eval(w2).pow(k);
            IntMatrix C = A.inverse_unimodular() * B.inverse_unimodular() * A * B;
            return std::pair<Word, Int>{
                commutator(w1.pow(int64_t(k)), w2.pow(int64_t(k))),
                (C - IntMatrix::identity(n)).gcd_nonzero_entries()};
        }
        return std::nullopt;
    };
    CandidateReport rep = gcd_candidate_report(
        "monomial", "nontrivial", "WitnessNotFound",
        "every sampled power commutator is trivial mod " + std::to_string(p0),
        params, draw);

    RecogParams rp = recognition_params(params);
    for (uint64_t p : rep.candidates) {
        if (is_surjective_mod_p(G, p, rp).verdict == SurjVerdict::Yes) {
            rep.refined[p] = SieveVerdict::Out;
            continue;
        }
        try {
            rep.refined[p] = image_predicates(G, p, rp).monomial ? SieveVerdict::In
                                                                 : SieveVerdict::Out;
        } catch (const Error& e) {
            if (std::string(e.code()) != "EnumerationTooLarge") throw;
            rep.refined[p] = SieveVerdict::Deferred;
            note_append(rep.notes, "candidate " + std::to_string(p) +
                                       " deferred to the surjectivity filter");
        }
    }
    return rep;
}

CandidateReport primes_for_solvable(const GenSet& G, int delta,
                                    const SieveParams& params) {
    int n = G.degree();
    int del = delta > 0 ? delta : (params.delta > 0 ? params.delta : solvable_delta(n));
    uint64_t p0 = mirror_prime(params);
    size_t leaves = size_t(1) << (del + 1);

    WordSampler s(mix_seed(params.seed, 0x736f6c76ULL), G.count());
    uint64_t used = 0;
    SieveDraw draw = [&]() -> std::optional<std::pair<Word, Int>> {
        while (used < params.word_budget) {
            used++;
            std::vector<Word> ws(leaves);
            std::vector<ModMatrix> xs;
            xs.reserve(leaves);
            for (size_t i = 0; i < leaves; i++) {
                ws[i] = s.next();
                xs.push_back(G.eval_mod(ws[i], p0));
            }
            if (balanced_tree_fold_mod(xs).is_identity()) {
                s.note_failure();
                continue;
            }
            // the tree is nontrivial mod p0, so fold it exactly over Z
            std::vector<std::pair<IntMatrix, IntMatrix>> L(leaves);
            for (size_t i = 0; i < leaves; i++) {
                IntMatrix x = G.eval(ws[i]);
                L[i] = {x, x.inverse_unimodular()};
            }
            while (L.size() > 1) {
                std::vector<std::pair<IntMatrix, IntMatrix>> up;
                up.reserve(L.size() / 2);
                for (size_t i = 0; i < L.size(); i += 2) {
                    const auto& [a, ai] = L[i];
                    const auto& [b, bi] = L[i + 1];
                    up.push_back({ai * bi * a * b, bi * ai * b * a});
                }
                L = std::move(up);
            }
            return std::pair<Word, Int>{
                balanced_tree_commutator(ws),
                (L[0].first - IntMatrix::identity(n)).gcd_nonzero_entries()};
        }
        return std::nullopt;
    };
    CandidateReport rep = gcd_candidate_report(
        "solvable", "nontrivial", "SolvableWitnessNotFound",
        "every sampled depth-" + std::to_string(del + 1) +
            " commutator tree is trivial mod " + std::to_string(p0),
        params, draw);

    RecogParams rp = recognition_params(params);
    for (uint64_t p : rep.candidates) {
        if (is_surjective_mod_p(G, p, rp).verdict == SurjVerdict::Yes) {
            rep.refined[p] = SieveVerdict::Out; // equal to SL(n,p), so excluded
            continue;
        }
        try {
            /* a proper solvable image: properness holds because p <= 3 was
               settled exactly above and SL(n,p) is nonsolvable for p >= 5 */
            rep.refined[p] = image_predicates(G, p, rp).solvable ? SieveVerdict::In
                                                                 : SieveVerdict::Out;
        } catch (const Error& e) {
            if (std::string(e.code()) != "EnumerationTooLarge") throw;
            rep.refined[p] = SieveVerdict::Deferred;
            note_append(rep.notes, "candidate " + std::to_string(p) +
                                       " deferred to the surjectivity filter");
        }
    }
    return rep;
}

CandidateReport primes_for_isometry(const GenSet& G, const SieveParams& params) {
    require_full_algebra(G);
    uint64_t p0 = mirror_prime(params);

    WordSampler s(mix_seed(params.seed, 0x69736f6dULL), G.count());
    uint64_t used = 0;
    SieveDraw draw = [&]() -> std::optional<std::pair<Word, Int>> {
        while (used < params.word_budget) {
            used++;
            Word w = s.next();
            ModMatrix h = G.eval_mod(w, p0);
            if (h.trace() == h.inverse().trace()) {
                s.note_failure();
                continue;
            }
            IntMatrix H = G.eval(w);
            return std::pair<Word, Int>{
                w, abs(H.trace() - H.inverse_unimodular().trace())};
        }
        return std::nullopt;
    };
    CandidateReport rep = gcd_candidate_report(
        "isometry", "nonzero_trace_gap", "WitnessNotFound",
        "every sampled trace gap vanishes mod " + std::to_string(p0) +
            " (isometry input?)",
        params, draw);

    for (uint64_t p : rep.candidates)
        rep.refined[p] = invariant_form(G.reduced_gens(p), p, params.seed).has_value()
                             ? SieveVerdict::In
                             : SieveVerdict::Out;
    return rep;
}

CandidateReport primes_for_similarity(const GenSet& G, const SieveParams& params) {
    int n = G.degree();
    if (n == 2)
        fail("DegreeSkip", "SL(2,p) preserves the symplectic form; no similarity test");
    require_full_algebra(G);
    uint64_t p0 = mirror_prime(params);

    WordSampler s(mix_seed(params.seed, 0x73696d69ULL), G.count());
    uint64_t used = 0;
    SieveDraw draw = [&]() -> std::optional<std::pair<Word, Int>> {
        while (used < params.word_budget) {
            used++;
            Word c = commutator(s.next(), s.next());
            ModMatrix h = G.eval_mod(c, p0);
            if (h.trace() == h.inverse().trace()) {
                s.note_failure();
                continue;
            }
            IntMatrix H = G.eval(c);
            return std::pair<Word, Int>{
                c, abs(H.trace() - H.inverse_unimodular().trace())};
        }
        return std::nullopt;
    };
    CandidateReport rep = gcd_candidate_report(
        "similarity", "nonzero_trace_gap", "WitnessNotFound",
        "every sampled commutator trace gap vanishes mod " + std::to_string(p0),
        params, draw);

    for (uint64_t p : rep.candidates)
        rep.refined[p] =
            invariant_form(sampled_commutators_mod(G, p, params.seed), p,
                           params.seed + 1)
                    .has_value()
                ? SieveVerdict::In
                : SieveVerdict::Out;
    return rep;
}

} // namespace zdense
