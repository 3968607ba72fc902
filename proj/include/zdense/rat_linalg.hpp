#pragma once
#include <vector>

#include "zdense/int_matrix.hpp"
#include "zdense/numeric.hpp"

namespace zdense {

/* Row-reduced basis of a subspace of Q^ambient, grown one vector at a time.
   insert() reduces the vector against the current basis and reports whether
   the dimension grew.  Kept in reduced echelon form with rows ordered by
   pivot column, so the final basis is deterministic for a fixed insertion
   order. */
class RatRowBasis {
public:
    explicit RatRowBasis(int ambient) : ambient_(ambient) {}

    bool insert(std::vector<Rat> v);
    int dim() const { return int(rows_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<std::vector<Rat>>& rows() const { return rows_; }

private:
    int ambient_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<int> pivots_;
};

/* Matrix flattened row-major into Q^(n^2); the coordinate space used by the
   enveloping-algebra spans. */
std::vector<Rat> flatten_q(const IntMatrix& m);

} // namespace zdense
