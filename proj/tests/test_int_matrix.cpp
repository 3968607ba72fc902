#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zdense/errors.hpp"
#include "zdense/int_matrix.hpp"
#include "zdense/primes.hpp"

using namespace zdense;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Int>> r;
    for (auto& row : rows) r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows(r);
}

/* Independent torsion oracle: step through powers A, A^2, ... up to 130.
   Any torsion element of GL(n,Z), n <= 5, has order m = lcm(d_i) with
   sum phi(d_i) <= n, hence m <= 120; if no power up to 130 is the identity
   the matrix has infinite order. */
uint64_t brute_order(const IntMatrix& A) {
    IntMatrix p = A;
    for (uint64_t i = 1; i <= 130; i++) {
        if (p.is_identity()) return i;
        p = p * A;
    }
    return 0;
}

IntMatrix random_unimodular_local(int n, std::mt19937_64& rng, int steps) {
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), mult(-2, 2);
    for (int s = 0; s < steps; s++) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = mult(rng);
        if (c == 0) c = 1;
        m = m * IntMatrix::elementary(n, i, j, c);
    }
    return m;
}

/* random signed permutation matrix with determinant +-1 (torsion by
   construction) */
IntMatrix random_signed_perm(int n, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; i++) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix m(n);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < n; i++) m.at(perm[i], i) = sign(rng) ? 1 : -1;
    return m;
}

} // namespace

TEST_CASE("identity, elementary, equality") {
    IntMatrix I = IntMatrix::identity(3);
    CHECK(I.is_identity());
    IntMatrix e = IntMatrix::elementary(3, 0, 1, 5);
    CHECK(e.at(0, 1) == 5);
    CHECK(e.det() == 1);
    CHECK_FALSE(e.is_identity());
    CHECK_THROWS_AS(IntMatrix::elementary(2, 1, 1, 1), Error);
}

TEST_CASE("unimodular inverse") {
    IntMatrix I = IntMatrix::identity(4);
    CHECK(I.inverse_unimodular() == I);

    // z generator of the parametrized catalog family at parameter 1
    IntMatrix z = mat({{0, 0, 1}, {1, 0, -1}, {0, 1, -2}});
    CHECK(z.det() == 1);
    CHECK((z * z.inverse_unimodular()).is_identity());
    CHECK((z.inverse_unimodular() * z).is_identity());

    IntMatrix d2 = mat({{2, 0}, {0, 1}});
    CHECK_THROWS_WITH_AS(d2.inverse_unimodular(),
                         doctest::Contains("determinant 2"), Error);

    // det = -1 is fine for plain matrix inversion
    IntMatrix r = mat({{0, 1}, {1, 0}});
    CHECK((r * r.inverse_unimodular()).is_identity());
}

TEST_CASE("determinant: known values and multiplicativity") {
    CHECK(mat({{1, 2}, {3, 4}}).det() == -2);
    CHECK(mat({{0, 0, 1}, {1, 0, -1}, {0, 1, -2}}).det() == 1);
    CHECK(mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}).det() == 30);
    CHECK(mat({{0, 2}, {0, 3}}).det() == 0);

    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 200; trial++) {
        int n = 2 + int(trial % 4);
        IntMatrix A(n), B(n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                A.at(i, j) = entry(rng);
                B.at(i, j) = entry(rng);
            }
        CHECK((A * B).det() == A.det() * B.det());
        CHECK((A * A.adjugate()) == [&] {
            IntMatrix d(n);
            for (int i = 0; i < n; i++) d.at(i, i) = A.det();
            return d;
        }());
    }
}

TEST_CASE("char_poly") {
    // (x-1)^2
    CHECK(IntMatrix::identity(2).char_poly() == std::vector<Int>{1, -2, 1});
    // x^3 + 2x^2 + x - 1 for the degree-3 catalog generator above
    IntMatrix z = mat({{0, 0, 1}, {1, 0, -1}, {0, 1, -2}});
    CHECK(z.char_poly() == std::vector<Int>{-1, 1, 2, 1});

    // companion matrix of x^4 - 3x^2 + 7x - 2 reproduces its coefficients
    IntMatrix C(4);
    C.at(0, 3) = 2;
    C.at(1, 3) = -7;
    C.at(2, 3) = 3;
    C.at(3, 3) = 0;
    for (int i = 1; i < 4; i++) C.at(i, i - 1) = 1;
    CHECK(C.char_poly() == std::vector<Int>{-2, 7, -3, 0, 1});

    // degree-5 sanity: trace and determinant appear with the right signs
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 50; trial++) {
        IntMatrix A(5);
        for (Int& x : A.a) x = entry(rng);
        auto cp = A.char_poly();
        CHECK(cp[5] == 1);
        CHECK(cp[4] == -A.trace());
        CHECK(cp[0] == ((5 % 2) ? -A.det() : A.det()));
    }
}

TEST_CASE("torsion exponent values") {
    CHECK(torsion_exponent(2) == 12);
    CHECK(torsion_exponent(3) == 12);
    CHECK(torsion_exponent(4) == 120);
    CHECK(torsion_exponent(5) == 120);
}

TEST_CASE("finite_order_test: examples") {
    IntMatrix rot = mat({{0, -1}, {1, 0}});
    auto r = finite_order_test(rot);
    CHECK(r.finite);
    CHECK(r.order == 4);

    auto t = finite_order_test(mat({{1, 1}, {0, 1}}));
    CHECK_FALSE(t.finite);

    auto id = finite_order_test(IntMatrix::identity(3));
    CHECK(id.finite);
    CHECK(id.order == 1);
}

TEST_CASE("finite_order_test agrees with the powering oracle") {
    std::mt19937_64 rng(123);
    int checked = 0;
    for (int trial = 0; trial < 1000; trial++) {
        int n = 2 + trial % 4;
        IntMatrix V = random_unimodular_local(n, rng, 5);
        IntMatrix Vi = V.inverse_unimodular();
        IntMatrix A;
        if (trial % 2 == 0) {
            A = V * random_signed_perm(n, rng) * Vi; // torsion
        } else {
            std::uniform_int_distribution<int> c(1, 4);
            A = V * IntMatrix::elementary(n, 0, 1, c(rng)) * Vi; // infinite order
        }
        uint64_t oracle = brute_order(A);
        auto res = finite_order_test(A);
        CHECK(res.finite == (oracle != 0));
        if (res.finite) CHECK(res.order == oracle);
        checked++;
    }
    CHECK(checked == 1000);
}

TEST_CASE("gcd_nonzero_entries") {
    CHECK(IntMatrix(3).gcd_nonzero_entries() == 0);
    CHECK(mat({{2, 0}, {4, 6}}).gcd_nonzero_entries() == 2);
    CHECK(mat({{-3, 9}, {0, 6}}).gcd_nonzero_entries() == 3);

    // unipotent powers: T^i - 1 has single entry i
    IntMatrix T = mat({{1, 1}, {0, 1}});
    for (uint64_t i = 1; i <= 20; i++)
        CHECK((T.pow(i) - IntMatrix::identity(2)).gcd_nonzero_entries() == Int(i));

    // homogeneity under scaling
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-20, 20), scale(1, 9);
    for (int trial = 0; trial < 100; trial++) {
        IntMatrix A(3);
        for (Int& x : A.a) x = entry(rng);
        Int c = scale(rng);
        IntMatrix B(3);
        for (int i = 0; i < 9; i++) B.a[i] = c * A.a[i];
        CHECK(B.gcd_nonzero_entries() == c * A.gcd_nonzero_entries());
    }
}

TEST_CASE("is_transvection") {
    CHECK(IntMatrix::elementary(4, 0, 1, 1).is_transvection());
    CHECK(IntMatrix::elementary(3, 2, 0, -7).is_transvection());
    CHECK_FALSE(IntMatrix::identity(4).is_transvection());
    CHECK_FALSE(mat({{0, -1}, {1, 0}}).is_transvection());
    // N = E12 + E13 still has rank one
    CHECK(mat({{1, 1, 1}, {0, 1, 0}, {0, 0, 1}}).is_transvection());
    // N = E12 + E34 has rank two
    CHECK_FALSE(mat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})
                    .is_transvection());
    // conjugates of transvections are transvections
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; trial++) {
        IntMatrix V = random_unimodular_local(4, rng, 8);
        IntMatrix t = V * IntMatrix::elementary(4, 1, 3, 2) * V.inverse_unimodular();
        CHECK(t.is_transvection());
    }
}

TEST_CASE("pow laws") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> entry(-4, 4), e(0, 9);
    for (int trial = 0; trial < 100; trial++) {
        IntMatrix A(3);
        for (Int& x : A.a) x = entry(rng);
        uint64_t p = e(rng), q = e(rng);
        CHECK(A.pow(0).is_identity());
        CHECK(A.pow(p + q) == A.pow(p) * A.pow(q));
    }
}
