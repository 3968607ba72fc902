#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zdense/errors.hpp"
#include "zdense/factorint.hpp"
#include "zdense/primes.hpp"

using namespace zdense;

namespace {

std::map<Int, unsigned> pm(const std::vector<std::pair<long, unsigned>>& v) {
    std::map<Int, unsigned> m;
    for (auto& [p, e] : v) m[Int(p)] = e;
    return m;
}

// hands out the given values in order
std::function<Int()> feed(std::vector<Int> vals) {
    auto state = std::make_shared<std::pair<std::vector<Int>, size_t>>(std::move(vals), 0);
    return [state]() -> Int {
        REQUIRE(state->second < state->first.size());
        return state->first[state->second++];
    };
}

const Int big_p1("17179869209"), big_p2("17179869263"); // the two primes above 2^34

} // namespace

TEST_CASE("trial division results") {
    auto one = partial_factor(Int(1));
    CHECK(one.prime_powers.empty());
    CHECK(one.composite_remainder == 1);
    CHECK(one.fully_factored());

    CHECK(partial_factor(Int(43008)).prime_powers == pm({{2, 11}, {3, 1}, {7, 1}}));
    CHECK(partial_factor(Int(5332)).prime_powers == pm({{2, 2}, {31, 1}, {43, 1}}));
    CHECK(partial_factor(Int(97)).prime_powers == pm({{97, 1}}));
    CHECK(partial_factor(Int(9999999967)).prime_powers == pm({{9999999967, 1}}));

    auto f = partial_factor(Int(5332));
    CHECK(f.primes() == std::vector<Int>{2, 31, 43});
    CHECK(f.reconstruct() == 5332);

    CHECK_THROWS_AS(partial_factor(Int(0)), Error);
    CHECK_THROWS_AS(partial_factor(Int(-4)), Error);
}

TEST_CASE("every small integer factors completely") {
    for (long d = 1; d <= 1000000; d++) {
        auto f = partial_factor(Int(d));
        if (!f.fully_factored() || f.reconstruct() != d) {
            CAPTURE(d);
            REQUIRE(f.fully_factored());
            REQUIRE(f.reconstruct() == d);
        }
    }
}

TEST_CASE("rho splits beyond 64 bits") {
    Int semi = big_p1 * big_p2;
    auto f = partial_factor(semi);
    CHECK(f.prime_powers == std::map<Int, unsigned>{{big_p1, 1}, {big_p2, 1}});
    CHECK(f.fully_factored());
    // determinism
    CHECK(partial_factor(semi).prime_powers == f.prime_powers);

    Int multi = Int(8388617) * 8388619 * 16777259 * big_p1;
    auto g = partial_factor(multi);
    CHECK(g.prime_powers ==
          std::map<Int, unsigned>{{8388617, 1}, {8388619, 1}, {16777259, 1}, {big_p1, 1}});
    CHECK(g.reconstruct() == multi);

    // large prime detected as such, not chewed on
    Int p = semi + 36; // 295147906966059223003 is prime
    REQUIRE(is_prime(p));
    auto h = partial_factor(p);
    CHECK(h.prime_powers == std::map<Int, unsigned>{{p, 1}});
}

TEST_CASE("size gates on hard inputs") {
    Int semi = big_p1 * big_p2;

    FactorBudget no_test;
    no_test.prime_test_bits = 64; // everything above u64 goes straight through
    auto f = partial_factor(semi, no_test);
    CHECK(f.prime_powers.empty());
    CHECK(f.composite_remainder == semi);
    CHECK(f.reconstruct() == semi);

    FactorBudget no_rho;
    no_rho.rho_bits = 64;
    auto g = partial_factor(semi, no_rho);
    CHECK(g.composite_remainder == semi);

    FactorBudget tiny_budget;
    tiny_budget.rho_iters = 10; // far below the ~2^18 collision scale
    auto h = partial_factor(semi, tiny_budget);
    CHECK(h.composite_remainder == semi);

    // factored small part still extracted around a blocked remainder
    auto k = partial_factor(semi * 720, no_rho);
    CHECK(k.prime_powers == pm({{2, 4}, {3, 2}, {5, 1}}));
    CHECK(k.composite_remainder == semi);
    CHECK(k.reconstruct() == semi * 720);
}

TEST_CASE("idempotent on its own output") {
    FactorBudget quick;
    quick.rho_iters = 20000; // hard cofactors may stay unresolved; that is fine here
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        Int d = Int(rng()) * rng() + 1;
        auto f = partial_factor(d, quick);
        CHECK(f.reconstruct() == d);
        Int factored = f.reconstruct() / f.composite_remainder;
        auto g = partial_factor(factored, quick);
        CHECK(g.prime_powers == f.prime_powers);
        CHECK(g.fully_factored());
    }
}

TEST_CASE("gcd refinement") {
    auto f = gcd_refine(feed({12, 18}), 2);
    CHECK(f.prime_powers == pm({{2, 1}, {3, 1}}));
    CHECK(f.input == 6);
    CHECK(f.fully_factored());

    // coprime draws collapse to 1 immediately
    Int s1 = big_p1 * big_p2, s2 = Int(8388617) * 8388619;
    auto g = gcd_refine(feed({s1, s2}), 5);
    CHECK(g.input == 1);
    CHECK(g.prime_powers.empty());
    CHECK(g.fully_factored());

    // a stubborn remainder survives, visibly
    FactorBudget no_rho;
    no_rho.rho_bits = 64;
    auto h = gcd_refine(feed({s1, s1}), 2, no_rho);
    CHECK(h.composite_remainder == s1);
    CHECK_FALSE(h.fully_factored());

    // once the remainder resolves, no further draws are taken
    auto k = gcd_refine(feed({36, 24, 1000}), 3);
    CHECK(k.input == 12);
    CHECK(k.prime_powers == pm({{2, 2}, {3, 1}}));

    // a single-round budget means a single draw
    auto m = gcd_refine(feed({68719476736}), 1);
    CHECK(m.prime_powers == pm({{2, 36}}));

    CHECK_THROWS_AS(gcd_refine(feed({12}), 0), Error);
    CHECK_THROWS_AS(gcd_refine(feed({0, 4}), 2), Error);
}
