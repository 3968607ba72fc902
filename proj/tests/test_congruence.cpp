#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "zdense/congruence.hpp"
#include "zdense/errors.hpp"
#include "zdense/gen_set.hpp"
#include "zdense/int_matrix.hpp"

using namespace zdense;

namespace {

GenSet sl3z() {
    return GenSet(3, "sl3z",
                  {IntMatrix::elementary(3, 0, 1, 1), IntMatrix::elementary(3, 1, 2, 1),
                   IntMatrix::elementary(3, 2, 0, 1)});
}

GenSet sl2z() {
    IntMatrix s(2);
    s.at(0, 0) = 0;
    s.at(0, 1) = -1;
    s.at(1, 0) = 1;
    s.at(1, 1) = 0;
    return GenSet(2, "sl2z", {s, IntMatrix::elementary(2, 0, 1, 1)});
}

std::string err_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

bool split_invariants(const ModulusSplit& s) {
    if (s.a * s.b * s.c != s.k) return false;
    if (s.a != std::gcd(s.k, s.M)) return false;
    if (std::gcd(s.c, s.a) != 1) return false;
    // every prime of b divides a, and c is maximal: no shared prime survives
    for (uint64_t q = 2, b = s.b; b > 1; q++)
        while (b % q == 0) {
            if (s.a % q != 0) return false;
            b /= q;
        }
    return true;
}

} // namespace

TEST_CASE("modulus decomposition examples") {
    ModulusSplit s = decompose_modulus(40, 8);
    CHECK(s.a == 8);
    CHECK(s.b == 1);
    CHECK(s.c == 5);

    s = decompose_modulus(24, 8);
    CHECK(s.a == 8);
    CHECK(s.b == 1);
    CHECK(s.c == 3);

    // k divides the level, so nothing splits off
    s = decompose_modulus(12, 324);
    CHECK(s.a == 12);
    CHECK(s.b == 1);
    CHECK(s.c == 1);

    // surplus factors of a shared prime go to b, never to c
    s = decompose_modulus(8, 2);
    CHECK(s.a == 2);
    CHECK(s.b == 4);
    CHECK(s.c == 1);

    s = decompose_modulus(15, 7695);
    CHECK(s.a == 15);
    CHECK(s.c == 1);
}

TEST_CASE("modulus decomposition exhaustively") {
    for (uint64_t k = 2; k <= 500; k++)
        for (uint64_t M = 1; M <= 500; M++) {
            ModulusSplit s = decompose_modulus(k, M);
            if (!split_invariants(s)) {
                CAPTURE(k);
                CAPTURE(M);
                REQUIRE(split_invariants(s));
            }
        }
}

TEST_CASE("modulus decomposition parameter handling") {
    CHECK(err_code([] { decompose_modulus(1, 8); }) == "BadParameter");
    CHECK(err_code([] { decompose_modulus(8, 0); }) == "BadParameter");
    CHECK(err_code([] { decompose_modulus(6, 4, 2); }) == "DegreeTwoComposite");
    // prime moduli are fine in degree 2
    ModulusSplit s = decompose_modulus(5, 4, 2);
    CHECK(s.a == 1);
    CHECK(s.c == 5);
}

TEST_CASE("exact image orders") {
    GenSet F = catalog("rho_F", 7);
    CHECK(image_order_mod(F, 3) == 9);
    CHECK(image_order_mod(F, 5) == 200);
    CHECK(image_order_mod(F, 15) == 1800);
    CHECK(image_order_mod(F, 19) == 3420);
    // 7 is coprime to the level, so the image is everything
    CHECK(image_order_mod(F, 7) == sl_order(3, 7));

    GenSet h1 = catalog("h1", 2);
    Int o8 = image_order_mod(h1, 8);
    CHECK(o8 == 12288);
    CHECK(sl_order(3, 8) / o8 == 896); // missing index 2^7 * 7
    CHECK(sl_order(3, 8) % o8 == 0);

    CHECK(image_order_mod(sl3z(), 6) == sl_order(3, 6));
    CHECK(err_code([] { image_order_mod(sl3z(), 0); }) == "BadParameter");
    CHECK(err_code([] { image_order_mod(sl2z(), 6); }) == "DegreeTwoComposite");
    CHECK(image_order_mod(sl2z(), 5) == sl_order(2, 5));

    RecogParams tight;
    tight.orbit_cap = 1000;
    tight.bfs_cap = 1000;
    CHECK(err_code([&] { image_order_mod(sl3z(), 31, tight); }) ==
          "OrderOracleUnavailable");
}

TEST_CASE("every image order divides the full group order") {
    GenSet F = catalog("rho_F", 7);
    for (uint64_t k : {3, 5, 9, 15, 19, 45})
        CHECK(sl_order(3, k) % image_order_mod(F, k) == 0);
}

TEST_CASE("direct product prediction") {
    GenSet h1 = catalog("h1", 2);
    Int o8 = image_order_mod(h1, 8);

    // level 8: mod 24 the prime 3 splits clean off
    ModulusSplit s24 = decompose_modulus(24, 8);
    Int pred = predicted_order(h1, s24, o8);
    CHECK(pred == 69009408);
    CHECK(pred == o8 * 5616);
    CHECK(pred == image_order_mod(h1, 24));

    ModulusSplit s40 = decompose_modulus(40, 8);
    CHECK(predicted_order(h1, s40, o8) == o8 * 372000);
    CHECK(predicted_order(h1, s40, o8) == image_order_mod(h1, 40));

    // a dense group with trivial level: prediction collapses to sl_order
    for (uint64_t k : {6, 12}) {
        ModulusSplit s = decompose_modulus(k, 1);
        CHECK(s.c == k);
        CHECK(predicted_order(sl3z(), s, 1) == image_order_mod(sl3z(), k));
    }

    ModulusSplit broken;
    broken.k = 12;
    broken.a = 5;
    CHECK(err_code([&] { predicted_order(h1, broken, o8); }) == "BadParameter");
}

TEST_CASE("prime power ladders") {
    GenSet F = catalog("rho_F", 7);
    std::vector<Int> L = prime_power_ladder(F, 3, 4);
    REQUIRE(L.size() == 4);
    CHECK(L[0] == 9);
    CHECK(L[1] == 243);
    CHECK(L[2] == 6561);
    CHECK(L[3] == 531441);
    // gains 3^3, 3^3, 3^4
    CHECK(L[1] / L[0] == 27);
    CHECK(L[2] / L[1] == 27);
    CHECK(L[3] / L[2] == 81);

    std::vector<Int> L19 = prime_power_ladder(F, 19, 1);
    REQUIRE(L19.size() == 1);
    CHECK(L19[0] == 3420);

    std::vector<Int> L2 = prime_power_ladder(sl3z(), 2, 3);
    REQUIRE(L2.size() == 3);
    CHECK(L2[0] == 168);
    CHECK(L2[1] == 43008);
    CHECK(L2[2] == 11010048);

    std::vector<Int> H = prime_power_ladder(catalog("h1", 2), 2, 3);
    REQUIRE(H.size() == 3);
    CHECK(H[0] == 12);
    CHECK(H[1] == 384);
    CHECK(H[2] == 12288);
}

TEST_CASE("ladder parameter handling") {
    CHECK(err_code([] { prime_power_ladder(sl3z(), 6, 2); }) == "BadParameter");
    CHECK(err_code([] { prime_power_ladder(sl3z(), 3, 0); }) == "BadParameter");
    CHECK(err_code([] { prime_power_ladder(sl2z(), 2, 3); }) == "DegreeTwoComposite");
    std::vector<Int> one = prime_power_ladder(sl2z(), 7, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == sl_order(2, 7));
    CHECK(err_code([] { prime_power_ladder(sl3z(), 3, 64); }) == "BadParameter");
}
