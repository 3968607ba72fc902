#include "zdense/mod_matrix.hpp"

#include <sstream>

#include "zdense/errors.hpp"
#include "zdense/primes.hpp"

namespace zdense {

uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
    a %= m;
    int64_t t = 0, newt = 1;
    uint64_t r = m, newr = a;
    while (newr != 0) {
        uint64_t q = r / newr;
        int64_t tmpt = t - int64_t(q) * newt;
        t = newt;
        newt = tmpt;
        uint64_t tmpr = r - q * newr;
        r = newr;
        newr = tmpr;
    }
    if (r != 1)
        fail("NotInvertibleMod", "no inverse: gcd(" + std::to_string(a) + ", " +
                                     std::to_string(m) + ") = " + std::to_string(r));
    return t < 0 ? uint64_t(t + int64_t(m)) : uint64_t(t);
}

ModMatrix ModMatrix::identity(int n, uint64_t m) {
    ModMatrix r(n, m);
    for (int i = 0; i < n; i++) r.at(i, i) = 1 % m;
    return r;
}

ModMatrix ModMatrix::reduce(const IntMatrix& A, uint64_t m) {
    if (m < 2) fail("BadParameter", "reduce: modulus must be at least 2");
    ModMatrix r(A.n, m);
    Int mm = m;
    for (size_t i = 0; i < A.a.size(); i++) {
        Int v = A.a[i] % mm;
        if (v < 0) v += mm;
        r.a[i] = to_u64(v);
    }
    return r;
}

bool ModMatrix::is_identity() const {
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            if (at(i, j) != (i == j ? 1 % m : 0)) return false;
    return true;
}

bool ModMatrix::is_scalar() const {
    uint64_t d = at(0, 0);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            if (at(i, j) != (i == j ? d : 0)) return false;
    return true;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    if (n != o.n || m != o.m) fail("BadParameter", "mod product: shape mismatch");
    ModMatrix r(n, m);
    for (int i = 0; i < n; i++)
        for (int k = 0; k < n; k++) {
            uint64_t x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < n; j++) {
                r.at(i, j) = uint64_t(((unsigned __int128)x * o.at(k, j) + r.at(i, j)) % m);
            }
        }
    return r;
}

ModMatrix ModMatrix::pow(uint64_t e) const {
    ModMatrix base = *this, r = identity(n, m);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

uint64_t ModMatrix::trace() const {
    uint64_t t = 0;
    for (int i = 0; i < n; i++) t = (t + at(i, i)) % m;
    return t;
}

namespace {
IntMatrix lift(const ModMatrix& a) {
    IntMatrix r(a.n);
    for (size_t i = 0; i < a.a.size(); i++) r.a[i] = a.a[i];
    return r;
}
} // namespace

uint64_t ModMatrix::det() const {
    Int d = lift(*this).det() % Int(m);
    if (d < 0) d += m;
    return to_u64(d);
}

ModMatrix ModMatrix::inverse() const {
    uint64_t d = det();
    uint64_t dinv = inv_mod_u64(d, m); // throws when det is not a unit
    ModMatrix adj = reduce(lift(*this).adjugate(), m);
    ModMatrix r(n, m);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = mulmod_u64(adj.a[i], dinv, m);
    return r;
}

int ModMatrix::rank_prime() const {
    if (!is_prime_u64(m)) fail("CompositeModulus", "rank needs a prime modulus");
    std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) rows[i][j] = at(i, j);
    int rank = 0;
    for (int col = 0; col < n && rank < n; col++) {
        int piv = -1;
        for (int i = rank; i < n; i++)
            if (rows[i][col]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        uint64_t inv = inv_mod_u64(rows[rank][col], m);
        for (int j = col; j < n; j++) rows[rank][j] = mulmod_u64(rows[rank][j], inv, m);
        for (int i = 0; i < n; i++) {
            if (i == rank || !rows[i][col]) continue;
            uint64_t f = rows[i][col];
            for (int j = col; j < n; j++) {
                uint64_t s = mulmod_u64(f, rows[rank][j], m);
                rows[i][j] = (rows[i][j] + m - s) % m;
            }
        }
        rank++;
    }
    return rank;
}

void ModMatrix::apply(const uint64_t* in, uint64_t* out) const {
    for (int i = 0; i < n; i++) {
        unsigned __int128 acc = 0;
        for (int j = 0; j < n; j++) acc += (unsigned __int128)at(i, j) * in[j];
        out[i] = uint64_t(acc % m);
    }
}

std::string ModMatrix::key() const {
    int bytes = m <= (1ULL << 8) ? 1 : m <= (1ULL << 16) ? 2 : m <= (1ULL << 32) ? 4 : 8;
    std::string s;
    s.reserve(a.size() * bytes);
    for (uint64_t v : a)
        for (int b = 0; b < bytes; b++) s.push_back(char((v >> (8 * b)) & 0xff));
    return s;
}

std::string ModMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n; i++) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n; j++) os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "] mod " << m;
    return os.str();
}

Int sl_order(int n, uint64_t m) {
    if (n < 2) fail("BadParameter", "sl_order: degree must be at least 2");
    if (m == 0) fail("BadParameter", "sl_order: modulus must be positive");
    Int total = 1;
    for (auto [p, e] : factor_u64(m)) {
        Int pe = 1;
        Int P = p;
        /* |SL(n,p)| */
        Int base = boost::multiprecision::pow(P, unsigned(n * (n - 1) / 2));
        for (int i = 2; i <= n; i++)
            base *= boost::multiprecision::pow(P, unsigned(i)) - 1;
        pe = base;
        if (e > 1)
            pe *= boost::multiprecision::pow(P, unsigned((e - 1) * (n * n - 1)));
        total *= pe;
    }
    return total;
}

bool element_order_exceeds(const ModMatrix& g, uint64_t k) {
    ModMatrix p = g;
    for (uint64_t i = 1; i <= k; i++) {
        if (p.is_identity()) return false;
        p = p * g;
    }
    return true;
}

uint64_t element_order_bounded(const ModMatrix& g, uint64_t bound) {
    ModMatrix p = g;
    for (uint64_t i = 1; i <= bound; i++) {
        if (p.is_identity()) return i;
        p = p * g;
    }
    return 0;
}

bool ModRowBasis::insert(std::vector<uint64_t> v) {
    if (int(v.size()) != ambient_)
        fail("BadParameter", "ModRowBasis: vector has wrong length");
    for (uint64_t& x : v) x %= p_;
    for (size_t r = 0; r < rows_.size(); r++) {
        uint64_t c = v[pivots_[r]];
        if (!c) continue;
        for (int j = 0; j < ambient_; j++) {
            uint64_t s = mulmod_u64(c, rows_[r][j], p_);
            v[j] = (v[j] + p_ - s) % p_;
        }
    }
    int piv = -1;
    for (int j = 0; j < ambient_; j++)
        if (v[j]) { piv = j; break; }
    if (piv < 0) return false;
    uint64_t inv = inv_mod_u64(v[piv], p_);
    for (int j = 0; j < ambient_; j++) v[j] = mulmod_u64(v[j], inv, p_);
    for (size_t r = 0; r < rows_.size(); r++) {
        uint64_t f = rows_[r][piv];
        if (!f) continue;
        for (int j = 0; j < ambient_; j++) {
            uint64_t s = mulmod_u64(f, v[j], p_);
            rows_[r][j] = (rows_[r][j] + p_ - s) % p_;
        }
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) pos++;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

std::vector<std::vector<uint64_t>> nullspace_mod_p(
    const std::vector<std::vector<uint64_t>>& equations, int ncols, uint64_t p) {
    /* row-reduce the equation stack, then read off one basis vector per free
       column */
    ModRowBasis basis(ncols, p);
    for (const auto& e : equations) basis.insert(e);
    const auto& rows = basis.rows();
    std::vector<int> pivot_of_col(ncols, -1);
    for (size_t r = 0; r < rows.size(); r++)
        for (int j = 0; j < ncols; j++)
            if (rows[r][j]) { pivot_of_col[j] = int(r); break; }
    std::vector<std::vector<uint64_t>> out;
    for (int free_col = 0; free_col < ncols; free_col++) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<uint64_t> v(ncols, 0);
        v[free_col] = 1;
        for (int j = 0; j < ncols; j++) {
            int r = pivot_of_col[j];
            if (r >= 0 && rows[r][free_col]) v[j] = (p - rows[r][free_col]) % p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<uint64_t> flatten_mod(const ModMatrix& m) { return m.a; }

} // namespace zdense
