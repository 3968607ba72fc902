#pragma once
#include <cstdint>
#include <vector>

#include "zdense/gen_set.hpp"
#include "zdense/int_matrix.hpp"
#include "zdense/mod_matrix.hpp"
#include "zdense/numeric.hpp"
#include "zdense/word.hpp"

namespace zdense {

/* Q-basis of a matrix algebra spanned by group elements, with the word that
   produced each basis matrix.  gram_det = det[tr(A_i A_j)] is computed only
   when the basis is full (dim = n^2); it is nonzero there because a full
   group-element span is semisimple. */
struct AlgebraBasis {
    int n = 0;
    std::vector<Word> words;
    std::vector<IntMatrix> mats;
    Int gram_det = 0;

    int dim() const { return int(mats.size()); }
    bool full() const { return dim() == n * n; }
};

/* det[tr(A_i A_j)] over the given matrices */
Int gram_determinant(const std::vector<IntMatrix>& basis);

/* Spin closure of the span of {identity} under right multiplication by the
   generators, breadth-first so recorded words stay short.  A nonzero
   shuffle_seed permutes the generator order per step, producing a different
   basis of the same algebra (used to re-randomize the Gram determinant). */
AlgebraBasis algebra_basis_Q(const GenSet& G, uint64_t shuffle_seed = 0);

/* Dimension over F_p of the spun span of the reduced generators.
   p must be prime (rank needs a field): CompositeModulus otherwise. */
int algebra_dim_mod(const GenSet& G, uint64_t p);
int algebra_dim_mod_gens(const std::vector<ModMatrix>& gens, uint64_t p);

/* Q-basis of the algebra generated by all G-conjugates of t = eval(t_word):
   seeded with {identity, t}, closed under basis-pair products and under
   conjugation of basis elements by each generator.  t must be a transvection
   (NotTransvection otherwise). */
AlgebraBasis normal_closure_algebra_basis_Q(const GenSet& G, const Word& t_word,
                                            uint64_t shuffle_seed = 0);

/* Same closure computed directly over F_p */
int normal_closure_algebra_dim_mod(const GenSet& G, const Word& t_word, uint64_t p);

} // namespace zdense
