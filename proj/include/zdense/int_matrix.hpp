#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "zdense/numeric.hpp"

namespace zdense {

/* Dense square matrix over Z with exact arithmetic.  Degrees are tiny (2..11)
   but entries routinely grow to thousands of digits in commutator words, so
   everything is mpz-backed and no operation ever rounds. */
struct IntMatrix {
    int n = 0;
    std::vector<Int> a; // row-major, n*n entries

    IntMatrix() = default;
    explicit IntMatrix(int degree) : n(degree), a(size_t(degree) * degree, Int(0)) {}

    Int& at(int i, int j) { return a[size_t(i) * n + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * n + j]; }

    static IntMatrix identity(int n);
    /* I + c*E_ij (i != j): an elementary transvection generator. */
    static IntMatrix elementary(int n, int i, int j, const Int& c);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    bool is_identity() const;
    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix pow(uint64_t e) const;
    IntMatrix transposed() const;

    Int trace() const;

    /* Fraction-free Bareiss elimination; exact for any integer matrix. */
    Int det() const;

    IntMatrix adjugate() const;

    /* Inverse of a matrix with det = +-1; throws Error("NotUnimodular")
       otherwise.  The inverse of an integer matrix is integral exactly in
       this case. */
    IntMatrix inverse_unimodular() const;

    /* Coefficients of det(x*I - A), ascending: coeffs[k] multiplies x^k,
       coeffs[n] = 1.  Faddeev-LeVerrier with exact divisions. */
    std::vector<Int> char_poly() const;

    /* gcd of the absolute values of all nonzero entries; 0 for the zero
       matrix.  This is the "content" the sieves extract from h^i - 1. */
    Int gcd_nonzero_entries() const;

    /* True iff A = 1 + N with N of rank one and N^2 = 0. */
    bool is_transvection() const;

    std::string str() const;
};

struct FiniteOrderResult {
    bool finite = false;
    uint64_t order = 0; // set when finite
};

/* Decides torsion by a single exponent test: A has finite order iff
   A^L = 1 where L = torsion_exponent(n).  When finite, the exact order is
   recovered from the divisors of L. */
FiniteOrderResult finite_order_test(const IntMatrix& A);

} // namespace zdense
