#include "zdense/rat_linalg.hpp"

#include "zdense/errors.hpp"

namespace zdense {

bool RatRowBasis::insert(std::vector<Rat> v) {
    if (int(v.size()) != ambient_)
        fail("BadParameter", "RatRowBasis: vector has wrong length");
    for (size_t r = 0; r < rows_.size(); r++) {
        const Rat& c = v[pivots_[r]];
        if (c == 0) continue;
        Rat f = c; // rows are pivot-normalized to 1
        for (int j = 0; j < ambient_; j++) v[j] -= f * rows_[r][j];
    }
    int piv = -1;
    for (int j = 0; j < ambient_; j++)
        if (v[j] != 0) { piv = j; break; }
    if (piv < 0) return false;

    Rat lead = v[piv];
    for (int j = 0; j < ambient_; j++) v[j] /= lead;
    /* keep reduced form: clear the new pivot column in the old rows */
    for (size_t r = 0; r < rows_.size(); r++) {
        Rat f = rows_[r][piv];
        if (f == 0) continue;
        for (int j = 0; j < ambient_; j++) rows_[r][j] -= f * v[j];
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) pos++;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

std::vector<Rat> flatten_q(const IntMatrix& m) {
    std::vector<Rat> v;
    v.reserve(m.a.size());
    for (const Int& x : m.a) v.emplace_back(x);
    return v;
}

} // namespace zdense
