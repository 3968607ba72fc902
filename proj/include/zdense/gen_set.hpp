#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "zdense/int_matrix.hpp"
#include "zdense/mod_matrix.hpp"
#include "zdense/word.hpp"

namespace zdense {

/* A finitely generated subgroup of SL(n,Z), given by its generators.
   Validation (nonempty, uniform degree, determinant one) happens in the
   constructor; inverses are precomputed there too, so instances are
   immutable afterwards and safe to share across threads. */
class GenSet {
public:
    GenSet(int degree, std::string label, std::vector<IntMatrix> generators);

    int degree() const { return n_; }
    int count() const { return int(gens_.size()); }
    const std::string& label() const { return label_; }
    const IntMatrix& gen(int i) const;         // 0-based; IndexOutOfRange
    const IntMatrix& gen_inverse(int i) const; // 0-based; IndexOutOfRange
    const std::vector<IntMatrix>& gens() const { return gens_; }

    IntMatrix eval(const Word& w) const;
    ModMatrix eval_mod(const Word& w, uint64_t m) const;
    /* generators (not inverses) reduced mod m, in order */
    std::vector<ModMatrix> reduced_gens(uint64_t m) const;
    /* generators followed by their inverses, all reduced mod m */
    std::vector<ModMatrix> reduced_gens_with_inverses(uint64_t m) const;

    nlohmann::json to_json() const;
    static GenSet from_json(const nlohmann::json& doc);
    static GenSet parse(const std::string& json_text);
    std::string dump_canonical() const; // sorted keys, no whitespace

private:
    int n_;
    std::string label_;
    std::vector<IntMatrix> gens_;
    std::vector<IntMatrix> invs_;
};

/* Named families of generating sets with one integer parameter; entries are
   stored as polynomials in the parameter and evaluated on demand.
   Names: rho_Gamma, rho_F, h1, h2, h3.  h2 only accepts even parameters
   (odd ones make quarter-entries non-integral: ParityError). */
GenSet catalog(const std::string& name, long long param);

/* Product of `steps` random elementary row operations with multipliers in
   [-3,3] \ {0}; deterministic in (n, seed, steps). */
IntMatrix random_unimodular(int n, uint64_t seed, int steps);

} // namespace zdense
