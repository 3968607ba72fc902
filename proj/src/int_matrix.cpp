#include "zdense/int_matrix.hpp"

#include <sstream>

#include "zdense/errors.hpp"
#include "zdense/primes.hpp"

namespace zdense {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::elementary(int n, int i, int j, const Int& c) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        fail("BadParameter", "elementary: need distinct indices inside the degree");
    IntMatrix m = identity(n);
    m.at(i, j) = c;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    int n = int(rows.size());
    IntMatrix m(n);
    for (int i = 0; i < n; i++) {
        if (int(rows[i].size()) != n)
            fail("BadParameter", "from_rows: matrix must be square");
        for (int j = 0; j < n; j++) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_identity() const {
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (n != o.n) fail("BadParameter", "matrix product: degree mismatch");
    IntMatrix r(n);
    for (int i = 0; i < n; i++) {
        for (int k = 0; k < n; k++) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < n; j++) r.at(i, j) += x * o.at(k, j);
        }
    }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (n != o.n) fail("BadParameter", "matrix difference: degree mismatch");
    IntMatrix r(n);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = a[i] - o.a[i];
    return r;
}

IntMatrix IntMatrix::pow(uint64_t e) const {
    IntMatrix base = *this, r = identity(n);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) r.at(j, i) = at(i, j);
    return r;
}

Int IntMatrix::trace() const {
    Int t = 0;
    for (int i = 0; i < n; i++) t += at(i, i);
    return t;
}

Int IntMatrix::det() const {
    if (n == 0) return 1;
    IntMatrix b = *this;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; k++) {
        if (b.at(k, k) == 0) {
            int r = -1;
            for (int i = k + 1; i < n; i++)
                if (b.at(i, k) != 0) { r = i; break; }
            if (r < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(b.at(k, j), b.at(r, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++) {
            for (int j = k + 1; j < n; j++) {
                Int v = b.at(k, k) * b.at(i, j) - b.at(i, k) * b.at(k, j);
                /* Bareiss: this division is exact */
                b.at(i, j) = v / prev;
            }
            b.at(i, k) = 0;
        }
        prev = b.at(k, k);
    }
    Int d = b.at(n - 1, n - 1);
    return sign > 0 ? d : -d;
}

IntMatrix IntMatrix::adjugate() const {
    IntMatrix adj(n);
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    IntMatrix minor(n - 1);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            int mi = 0;
            for (int r = 0; r < n; r++) {
                if (r == i) continue;
                int mj = 0;
                for (int c = 0; c < n; c++) {
                    if (c == j) continue;
                    minor.at(mi, mj) = at(r, c);
                    mj++;
                }
                mi++;
            }
            Int cof = minor.det();
            if ((i + j) & 1) cof = -cof;
            adj.at(j, i) = cof; // transposed cofactor
        }
    }
    return adj;
}

IntMatrix IntMatrix::inverse_unimodular() const {
    Int d = det();
    if (d != 1 && d != -1)
        fail("NotUnimodular", "inverse requested for matrix with determinant " + d.str());
    IntMatrix adj = adjugate();
    if (d == -1)
        for (Int& x : adj.a) x = -x;
    return adj;
}

std::vector<Int> IntMatrix::char_poly() const {
    /* Faddeev-LeVerrier: M_1 = A, c_1 = -tr(M_1);
       M_k = A*(M_{k-1} + c_{k-1}*I), c_k = -tr(M_k)/k. */
    std::vector<Int> c(size_t(n) + 1);
    c[n] = 1;
    IntMatrix M = *this;
    Int ck = -M.trace();
    c[n - 1] = ck;
    for (int k = 2; k <= n; k++) {
        for (int i = 0; i < n; i++) M.at(i, i) += ck;
        M = *this * M;
        Int t = -M.trace();
        if (t % k != 0) fail("InternalError", "char_poly: inexact division");
        ck = t / k;
        c[n - k] = ck;
    }
    return c;
}

Int IntMatrix::gcd_nonzero_entries() const {
    Int g = 0;
    for (const Int& x : a)
        if (x != 0) g = gcd(g, abs(x));
    return g;
}

bool IntMatrix::is_transvection() const {
    IntMatrix N = *this - identity(n);
    if (N.is_zero()) return false;
    if (!(N * N).is_zero()) return false;
    /* rank(N) = 1 iff all 2x2 minors vanish (N is nonzero here) */
    for (int i = 0; i < n; i++)
        for (int k = i + 1; k < n; k++)
            for (int j = 0; j < n; j++)
                for (int l = j + 1; l < n; l++)
                    if (N.at(i, j) * N.at(k, l) - N.at(i, l) * N.at(k, j) != 0)
                        return false;
    return true;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n; i++) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n; j++) os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

FiniteOrderResult finite_order_test(const IntMatrix& A) {
    uint64_t L = torsion_exponent(A.n);
    if (!A.pow(L).is_identity()) return {false, 0};
    /* order divides L; strip prime factors while the power stays trivial */
    uint64_t ord = L;
    for (auto [p, e] : factor_u64(L)) {
        (void)e;
        while (ord % p == 0 && A.pow(ord / p).is_identity()) ord /= p;
    }
    return {true, ord};
}

} // namespace zdense
