#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "zdense/int_matrix.hpp"
#include "zdense/numeric.hpp"

namespace zdense {

uint64_t inv_mod_u64(uint64_t a, uint64_t m); // throws NotInvertibleMod

/* Square matrix over Z/m with entries in [0, m).  The modulus is a plain
   uint64 (moduli beyond 2^63 never arise: candidate primes that large are
   handled without exact enumeration), products go through 128-bit
   intermediates. */
struct ModMatrix {
    int n = 0;
    uint64_t m = 0;
    std::vector<uint64_t> a;

    ModMatrix() = default;
    ModMatrix(int degree, uint64_t modulus)
        : n(degree), m(modulus), a(size_t(degree) * degree, 0) {}

    uint64_t& at(int i, int j) { return a[size_t(i) * n + j]; }
    uint64_t at(int i, int j) const { return a[size_t(i) * n + j]; }

    static ModMatrix identity(int n, uint64_t m);
    static ModMatrix reduce(const IntMatrix& A, uint64_t m);

    bool operator==(const ModMatrix& o) const {
        return n == o.n && m == o.m && a == o.a;
    }
    bool operator!=(const ModMatrix& o) const { return !(*this == o); }
    bool is_identity() const;
    bool is_scalar() const;

    ModMatrix operator*(const ModMatrix& o) const;
    ModMatrix pow(uint64_t e) const;
    uint64_t trace() const;
    uint64_t det() const; // exact: lifted to Z, reduced

    /* adjugate * det^{-1}; works for any modulus with det a unit, throws
       Error("NotInvertibleMod") otherwise. */
    ModMatrix inverse() const;

    /* rank by Gaussian elimination; requires prime modulus. */
    int rank_prime() const;

    /* apply to a column vector over Z/m */
    void apply(const uint64_t* in, uint64_t* out) const;

    /* compact byte key for hash-set enumeration */
    std::string key() const;

    std::string str() const;
};

/* |SL(n, Z/m)|: multiplicative over the prime factorization of m, with
   |SL(n,p^e)| = p^((e-1)(n^2-1)) * p^(n(n-1)/2) * prod_{i=2..n} (p^i - 1).
   sl_order(n, 1) = 1. */
Int sl_order(int n, uint64_t m);

/* true iff g^i is nontrivial for every 1 <= i <= k (i.e. the order of g
   exceeds k). */
bool element_order_exceeds(const ModMatrix& g, uint64_t k);

/* exact order if it is <= bound, else 0 */
uint64_t element_order_bounded(const ModMatrix& g, uint64_t bound);

/* Row-reduced basis over F_p for spans inside (F_p)^ambient; the modular
   sibling of RatRowBasis.  Requires prime modulus. */
class ModRowBasis {
public:
    ModRowBasis(int ambient, uint64_t p) : ambient_(ambient), p_(p) {}

    bool insert(std::vector<uint64_t> v);
    int dim() const { return int(rows_.size()); }
    const std::vector<std::vector<uint64_t>>& rows() const { return rows_; }

private:
    int ambient_;
    uint64_t p_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<int> pivots_;
};

/* Basis of the solution space {x : E x = 0 over F_p} for a stack of
   equation rows of common length ncols. */
std::vector<std::vector<uint64_t>> nullspace_mod_p(
    const std::vector<std::vector<uint64_t>>& equations, int ncols, uint64_t p);

std::vector<uint64_t> flatten_mod(const ModMatrix& m);

} // namespace zdense
