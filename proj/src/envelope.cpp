#include "zdense/envelope.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "zdense/errors.hpp"
#include "zdense/primes.hpp"
#include "zdense/rat_linalg.hpp"

namespace zdense {

Int gram_determinant(const std::vector<IntMatrix>& basis) {
    int m = int(basis.size());
    IntMatrix gram(m);
    for (int i = 0; i < m; i++)
        for (int j = i; j < m; j++) {
            Int t = (basis[i] * basis[j]).trace();
            gram.at(i, j) = t;
            gram.at(j, i) = t;
        }
    return gram.det();
}

namespace {

std::vector<int> step_order(int count, std::mt19937_64* rng) {
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    return order;
}

} // namespace

AlgebraBasis algebra_basis_Q(const GenSet& G, uint64_t shuffle_seed) {
    int n = G.degree();
    std::mt19937_64 rng(mix_seed(shuffle_seed, 0x73706971ULL));
    std::mt19937_64* shuffler = shuffle_seed ? &rng : nullptr;

    AlgebraBasis out;
    out.n = n;
    RatRowBasis span(n * n);
    span.insert(flatten_q(IntMatrix::identity(n)));
    out.words.push_back(Word());
    out.mats.push_back(IntMatrix::identity(n));

    // breadth-first: head walks the basis as it grows
    for (size_t head = 0; head < out.mats.size() && !out.full(); head++) {
        for (int gi : step_order(G.count(), shuffler)) {
            IntMatrix prod = out.mats[head] * G.gen(gi);
            if (!span.insert(flatten_q(prod))) continue;
            out.words.push_back(out.words[head] * Word({{gi, 1}}));
            out.mats.push_back(std::move(prod));
            if (out.full()) break;
        }
    }

    if (out.full()) {
        out.gram_det = gram_determinant(out.mats);
        if (out.gram_det == 0)
            fail("InternalError", "zero Gram determinant on a full group-element basis");
    }
    return out;
}

int algebra_dim_mod_gens(const std::vector<ModMatrix>& gens, uint64_t p) {
    if (!is_prime_u64(p)) fail("CompositeModulus", "modulus " + std::to_string(p) + " is not prime");
    if (gens.empty()) fail("BadParameter", "need at least one generator");
    int n = gens[0].n;
    ModRowBasis span(n * n, p);
    std::vector<ModMatrix> basis;
    span.insert(flatten_mod(ModMatrix::identity(n, p)));
    basis.push_back(ModMatrix::identity(n, p));
    for (size_t head = 0; head < basis.size() && span.dim() < n * n; head++) {
        for (const ModMatrix& g : gens) {
            ModMatrix prod = basis[head] * g;
            if (span.insert(flatten_mod(prod))) basis.push_back(std::move(prod));
        }
    }
    return span.dim();
}

int algebra_dim_mod(const GenSet& G, uint64_t p) {
    if (!is_prime_u64(p)) fail("CompositeModulus", "modulus " + std::to_string(p) + " is not prime");
    return algebra_dim_mod_gens(G.reduced_gens(p), p);
}

namespace {

/* Shared shape of the normal-closure closure over Q and over F_p: seed with
   {1, t}, then alternate product sweeps and conjugation sweeps until no rank
   growth.  Mat must provide operator* and a flattener into Vec. */
template <class Mat, class Span, class Flatten>
void normal_closure_spin(std::vector<Mat>& basis, std::vector<Word>* words,
                         Span& span, const Flatten& flatten,
                         const std::vector<Mat>& gens, const std::vector<Mat>& gen_invs,
                         const std::vector<Word>& gen_words, int full_dim,
                         std::mt19937_64* shuffler) {
    bool grew = true;
    while (grew && span.dim() < full_dim) {
        grew = false;
        // conjugation sweep (fixpoint makes conjugation a bijection of the
        // span, so one-sided conjugates suffice)
        for (size_t i = 0; i < basis.size() && span.dim() < full_dim; i++) {
            for (int gi : step_order(int(gens.size()), shuffler)) {
                Mat conj = gen_invs[gi] * basis[i] * gens[gi];
                if (!span.insert(flatten(conj))) continue;
                if (words)
                    words->push_back(gen_words[gi].inverse() * (*words)[i] * gen_words[gi]);
                basis.push_back(std::move(conj));
                grew = true;
            }
        }
        // product sweep over all current pairs
        for (size_t i = 0; i < basis.size() && span.dim() < full_dim; i++)
            for (size_t j = 0; j < basis.size() && span.dim() < full_dim; j++) {
                Mat prod = basis[i] * basis[j];
                if (!span.insert(flatten(prod))) continue;
                if (words) words->push_back((*words)[i] * (*words)[j]);
                basis.push_back(std::move(prod));
                grew = true;
            }
    }
}

std::vector<Word> generator_words(const GenSet& G) {
    std::vector<Word> w;
    for (int i = 0; i < G.count(); i++) w.push_back(Word({{i, 1}}));
    return w;
}

} // namespace

AlgebraBasis normal_closure_algebra_basis_Q(const GenSet& G, const Word& t_word,
                                            uint64_t shuffle_seed) {
    int n = G.degree();
    IntMatrix t = G.eval(t_word);
    if (!t.is_transvection())
        fail("NotTransvection", "seed element " + t_word.str() + " is not a transvection");

    std::mt19937_64 rng(mix_seed(shuffle_seed, 0x6e636c71ULL));
    std::mt19937_64* shuffler = shuffle_seed ? &rng : nullptr;

    AlgebraBasis out;
    out.n = n;
    RatRowBasis span(n * n);
    span.insert(flatten_q(IntMatrix::identity(n)));
    out.words.push_back(Word());
    out.mats.push_back(IntMatrix::identity(n));
    span.insert(flatten_q(t));
    out.words.push_back(t_word);
    out.mats.push_back(t);

    std::vector<IntMatrix> invs;
    for (int i = 0; i < G.count(); i++) invs.push_back(G.gen_inverse(i));
    normal_closure_spin(out.mats, &out.words, span,
                        [](const IntMatrix& m) { return flatten_q(m); }, G.gens(), invs,
                        generator_words(G), n * n, shuffler);

    if (out.full()) {
        out.gram_det = gram_determinant(out.mats);
        if (out.gram_det == 0)
            fail("InternalError", "zero Gram determinant on a full normal-closure basis");
    }
    return out;
}

int normal_closure_algebra_dim_mod(const GenSet& G, const Word& t_word, uint64_t p) {
    if (!is_prime_u64(p)) fail("CompositeModulus", "modulus " + std::to_string(p) + " is not prime");
    int n = G.degree();
    IntMatrix t = G.eval(t_word);
    if (!t.is_transvection())
        fail("NotTransvection", "seed element " + t_word.str() + " is not a transvection");

    ModRowBasis span(n * n, p);
    std::vector<ModMatrix> basis;
    span.insert(flatten_mod(ModMatrix::identity(n, p)));
    basis.push_back(ModMatrix::identity(n, p));
    ModMatrix tbar = ModMatrix::reduce(t, p);
    if (span.insert(flatten_mod(tbar))) basis.push_back(tbar);

    std::vector<ModMatrix> gens = G.reduced_gens(p);
    std::vector<ModMatrix> invs;
    for (int i = 0; i < G.count(); i++) invs.push_back(ModMatrix::reduce(G.gen_inverse(i), p));
    normal_closure_spin(basis, static_cast<std::vector<Word>*>(nullptr), span,
                        [](const ModMatrix& m) { return flatten_mod(m); }, gens, invs,
                        generator_words(G), n * n, nullptr);
    return span.dim();
}

} // namespace zdense
