#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "zdense/density.hpp"
#include "zdense/errors.hpp"
#include "zdense/gen_set.hpp"
#include "zdense/int_matrix.hpp"
#include "zdense/recognition.hpp"

using namespace zdense;

namespace {

GenSet slnz_cyclic(int n) {
    std::vector<IntMatrix> gens;
    for (int i = 0; i < n; i++)
        gens.push_back(IntMatrix::elementary(n, i, (i + 1) % n, 1));
    return GenSet(n, "sl" + std::to_string(n) + "z", gens);
}

GenSet sl2z() {
    IntMatrix s(2);
    s.at(0, 0) = 0;
    s.at(0, 1) = -1;
    s.at(1, 0) = 1;
    s.at(1, 1) = 0;
    return GenSet(2, "sl2z", {s, IntMatrix::elementary(2, 0, 1, 1)});
}

GenSet sp4z() {
    IntMatrix u1 = IntMatrix::identity(4);
    u1.at(0, 2) = 1;
    IntMatrix u2 = IntMatrix::identity(4);
    u2.at(1, 3) = 1;
    IntMatrix u3 = IntMatrix::identity(4);
    u3.at(0, 3) = 1;
    u3.at(1, 2) = 1;
    IntMatrix w = IntMatrix::from_rows(
        {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
    return GenSet(4, "sp4z", {u1, u2, u3, w});
}

std::string err_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::set<uint64_t> candidate_union(const PiReport& rep) {
    std::set<uint64_t> cands;
    for (const CandidateReport& r : rep.sieve_reports)
        cands.insert(r.candidates.begin(), r.candidates.end());
    return cands;
}

/* verdict coverage, set inclusions, and the shape of the 2-adic repair */
bool pi_report_invariants(const GenSet& G, const PiReport& rep) {
    std::set<uint64_t> cands = candidate_union(rep);
    if (rep.verdicts.size() != cands.size()) return false;
    for (uint64_t p : cands)
        if (!rep.verdicts.count(p)) return false;
    for (uint64_t p : rep.pi) {
        if (!cands.count(p)) return false;
        if (rep.verdicts.at(p).verdict != SurjVerdict::No) return false;
    }
    for (uint64_t p : rep.undetermined)
        if (rep.verdicts.at(p).verdict != SurjVerdict::Undetermined) return false;
    for (uint64_t p : rep.pi_tilde)
        if (p != 2 && !rep.pi.count(p)) return false;
    for (uint64_t p : rep.pi)
        if (!rep.pi_tilde.count(p)) return false;
    if (G.degree() > 4 && rep.pi_tilde != rep.pi) return false;
    return true;
}

bool diagnostics_hold(const GenSet& G, const DensityDiagnostics& d) {
    if (d.irreducible) {
        if (d.irreducible->claim != "irreducible_char_poly") return false;
        if (!monic_poly_irreducible_Q(G.eval(d.irreducible->word).char_poly()))
            return false;
    }
    if (d.nonsolvable) {
        if (d.nonsolvable->claim != "nontrivial") return false;
        if (G.eval(d.nonsolvable->word).is_identity()) return false;
    }
    if (d.trace_asymmetry) {
        if (d.trace_asymmetry->claim != "nonzero_trace_gap") return false;
        IntMatrix h = G.eval(d.trace_asymmetry->word);
        if (h.trace() == h.inverse_unimodular().trace()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("first surjective prime") {
    CHECK(find_p0(slnz_cyclic(3)) == 5);
    // the mod 5 image of the degree 7 form representation is proper
    CHECK(find_p0(catalog("rho_F", 7)) == 7);
    GenSet triv(3, "trivial", {IntMatrix::identity(3)});
    CHECK(err_code([&] { find_p0(triv); }) == "NoSurjectivePrimeFound");
}

TEST_CASE("2-adic repair of the prime set") {
    // surjective mod 2 but not mod 4: 2 joins the set
    CHECK(pi_tilde(catalog("rho_F", 1), {3}) == std::set<uint64_t>{2, 3});
    // the full group is surjective mod 4, so nothing is added
    CHECK(pi_tilde(slnz_cyclic(3), {}) == std::set<uint64_t>{});
    // degree above 4 never triggers the repair
    CHECK(pi_tilde(catalog("h3", 0), {3}) == std::set<uint64_t>{3});
}

TEST_CASE("prime-degree driver on the quadratic form representations") {
    PiReport r6 = primes_for_dense(catalog("rho_F", 6));
    CHECK(r6.p0 == 5);
    CHECK(r6.pi == std::set<uint64_t>{31, 43});
    CHECK(r6.pi_tilde == std::set<uint64_t>{2, 31, 43});
    CHECK(r6.undetermined.empty());
    // degree 3 runs order, irreducibility, solvable, similarity
    CHECK(r6.sieve_reports.size() == 4);
    CHECK(pi_report_invariants(catalog("rho_F", 6), r6));
    CHECK(diagnostics_hold(catalog("rho_F", 6), r6.diagnostics));
    CHECK(r6.diagnostics.irreducible.has_value());
    CHECK(r6.diagnostics.nonsolvable.has_value());
    CHECK(r6.diagnostics.trace_asymmetry.has_value());

    PiReport r1 = primes_for_dense(catalog("rho_F", 1));
    CHECK(r1.pi == std::set<uint64_t>{3});
    CHECK(r1.pi_tilde == std::set<uint64_t>{2, 3});
    CHECK(pi_report_invariants(catalog("rho_F", 1), r1));

    PiReport g6 = primes_for_dense(catalog("rho_Gamma", 6));
    CHECK(g6.pi == std::set<uint64_t>{31, 43});
    CHECK(g6.pi_tilde == std::set<uint64_t>{2, 31, 43});
    CHECK(pi_report_invariants(catalog("rho_Gamma", 6), g6));
}

TEST_CASE("prime-degree driver on the symmetric power families") {
    PiReport h2 = primes_for_dense(catalog("h2", 2));
    CHECK(h2.pi == std::set<uint64_t>{2, 13});
    CHECK(h2.pi_tilde == std::set<uint64_t>{2, 13});
    CHECK(pi_report_invariants(catalog("h2", 2), h2));

    PiReport h3 = primes_for_dense(catalog("h3", 0));
    CHECK(h3.pi == std::set<uint64_t>{2, 7, 19});
    CHECK(h3.pi_tilde == std::set<uint64_t>{2, 7, 19});
    // degree 5 adds the monomial sieve
    CHECK(h3.sieve_reports.size() == 5);
    bool has_monomial = false;
    for (const CandidateReport& r : h3.sieve_reports)
        if (r.sieve == "monomial") has_monomial = true;
    CHECK(has_monomial);
    CHECK(pi_report_invariants(catalog("h3", 0), h3));
}

TEST_CASE("prime-degree driver on the full groups") {
    PiReport s2 = primes_for_dense(sl2z());
    CHECK(s2.pi.empty());
    CHECK(s2.pi_tilde.empty());
    // degree 2 runs order, irreducibility, solvable only
    CHECK(s2.sieve_reports.size() == 3);
    for (const CandidateReport& r : s2.sieve_reports) {
        CHECK(r.sieve != "similarity");
        CHECK(r.sieve != "monomial");
    }
    CHECK(pi_report_invariants(sl2z(), s2));
    // no trace gap exists in degree 2
    CHECK(!s2.diagnostics.trace_asymmetry.has_value());
    CHECK(s2.diagnostics.irreducible.has_value());
    CHECK(s2.diagnostics.nonsolvable.has_value());
}

TEST_CASE("prime-degree driver parameter handling") {
    GenSet g4(4, "g4",
              {IntMatrix::elementary(4, 0, 1, 1), IntMatrix::elementary(4, 3, 0, 1)});
    CHECK(err_code([&] { primes_for_dense(g4); }) == "DegreeNotPrime");

    // degree 13 is prime but has no element-order bound on file
    SieveParams fast;
    fast.p0 = 5;
    CHECK(err_code([&] { primes_for_dense(slnz_cyclic(13), fast); }) ==
          "BadParameter");

    // a pinned mirror prime is adopted as-is
    SieveParams pinned;
    pinned.p0 = 7;
    PiReport r = primes_for_dense(catalog("rho_F", 1), pinned);
    CHECK(r.p0 == 7);
    CHECK(r.pi == std::set<uint64_t>{3});
}

TEST_CASE("prime-degree driver is deterministic") {
    PiReport a = primes_for_dense(catalog("h2", 2));
    PiReport b = primes_for_dense(catalog("h2", 2));
    CHECK(a.pi == b.pi);
    CHECK(a.pi_tilde == b.pi_tilde);
    CHECK(a.p0 == b.p0);
    CHECK(candidate_union(a) == candidate_union(b));
}

TEST_CASE("transvection driver on the full group") {
    PiReport rep = primes_for_dense_transvection(slnz_cyclic(4), Word::parse("g1"));
    CHECK(rep.pi.empty());
    CHECK(rep.pi_tilde.empty());
    CHECK(rep.undetermined.empty());
    CHECK(rep.sieve_reports.size() == 2);
    CHECK(rep.sieve_reports[0].sieve == "abs_irreducible");
    CHECK(rep.sieve_reports[1].sieve == "isometry");
    // both candidates settle by exact order
    CHECK(rep.verdicts.count(2) == 1);
    CHECK(rep.verdicts.at(2).method == "exact_order");
    CHECK(rep.verdicts.at(2).image_order == 20160);
    for (const auto& [p, v] : rep.verdicts) CHECK(v.verdict == SurjVerdict::Yes);
}

TEST_CASE("transvection driver flags genuine failures") {
    Word t = Word::parse("g1");
    // a symplectic group preserves its form, so no trace gap ever appears
    CHECK(err_code([&] { primes_for_dense_transvection(sp4z(), t); }) == "NotDense");
    // one transvection alone spans a 2-dimensional algebra
    GenSet cyc(4, "cyc", {IntMatrix::elementary(4, 0, 1, 1)});
    CHECK(err_code([&] { primes_for_dense_transvection(cyc, t); }) == "NotDense");
    CHECK(err_code([&] { primes_for_dense_transvection(slnz_cyclic(4),
                                                       Word::parse("g1*g2")); }) ==
          "NotTransvection");
    GenSet g3(3, "g3", {IntMatrix::elementary(3, 0, 1, 1)});
    CHECK(err_code([&] { primes_for_dense_transvection(g3, t); }) == "BadParameter");
}

TEST_CASE("transvection driver agrees with the exact oracle") {
    GenSet G(4, "rnd",
             {IntMatrix::elementary(4, 0, 1, 1), random_unimodular(4, 7, 14)});
    PiReport rep = primes_for_dense_transvection(G, Word::parse("g1"));
    CHECK(rep.undetermined.empty());
    for (uint64_t p : {2, 5, 11, 13}) {
        OrderOutcome oc = image_order_oracle(G, p);
        REQUIRE(oc.known);
        bool dense = oc.order == sl_order(4, p);
        CHECK(dense == !rep.pi.count(p));
    }
    // 2 and 11 are candidate primes that really fail
    CHECK(rep.pi.count(2) == 1);
    CHECK(rep.pi.count(11) == 1);
}

TEST_CASE("transvection driver steps aside when the seed collapses") {
    // every entry of t - 1 is divisible by 41, so mod 41 the closure is mute
    GenSet G(4, "t41",
             {IntMatrix::elementary(4, 0, 1, 41), IntMatrix::elementary(4, 1, 2, 1),
              IntMatrix::elementary(4, 2, 3, 1), IntMatrix::elementary(4, 3, 0, 1)});
    PiReport rep = primes_for_dense_transvection(G, Word::parse("g1"));
    REQUIRE(rep.verdicts.count(41) == 1);
    CHECK(rep.verdicts.at(41).verdict == SurjVerdict::Undetermined);
    CHECK(rep.undetermined.count(41) == 1);
    CHECK(rep.pi.count(41) == 0);
}

TEST_CASE("diagnostics") {
    GenSet F = catalog("rho_F", 7);
    DensityDiagnostics d = density_diagnostics(F);
    CHECK(d.irreducible.has_value());
    CHECK(d.nonsolvable.has_value());
    CHECK(d.trace_asymmetry.has_value());
    CHECK(diagnostics_hold(F, d));

    // the trivial group has no witnesses to offer
    GenSet triv(3, "trivial", {IntMatrix::identity(3)});
    SieveParams small;
    small.p0 = 5;
    small.word_budget = 50;
    DensityDiagnostics t = density_diagnostics(triv, small);
    CHECK(!t.irreducible.has_value());
    CHECK(!t.nonsolvable.has_value());
    CHECK(!t.trace_asymmetry.has_value());

    GenSet g4(4, "g4",
              {IntMatrix::elementary(4, 0, 1, 1), IntMatrix::elementary(4, 3, 0, 1)});
    CHECK(err_code([&] { density_diagnostics(g4); }) == "DegreeNotPrime");
}

TEST_CASE("rational irreducibility certificate") {
    CHECK(monic_poly_irreducible_Q({1, 0, 1}));      // x^2 + 1
    CHECK(monic_poly_irreducible_Q({1, 1, 1}));      // x^2 + x + 1
    CHECK(monic_poly_irreducible_Q({-2, 0, 0, 1}));  // x^3 - 2
    CHECK(monic_poly_irreducible_Q({-1, -1, 0, 1})); // x^3 - x - 1
    CHECK(monic_poly_irreducible_Q({-5, 1}));        // x - 5
    CHECK(!monic_poly_irreducible_Q({-1, 0, 1}));    // (x-1)(x+1)
    CHECK(!monic_poly_irreducible_Q({0, -1, 1}));    // x(x-1)
    CHECK(!monic_poly_irreducible_Q({-6, 11, -6, 1}));
    /* x^4 + 1 is irreducible over Q but splits mod every prime, so the
       one-sided certificate cannot claim it */
    CHECK(!monic_poly_irreducible_Q({1, 0, 0, 0, 1}));
    CHECK(err_code([&] { monic_poly_irreducible_Q({1, 0, 2}); }) == "BadParameter");
    CHECK(err_code([&] { monic_poly_irreducible_Q({1}); }) == "BadParameter");
}
