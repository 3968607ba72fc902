#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zdense {

/* Product expression g_{i_1}^{e_1} * ... * g_{i_s}^{e_s} over generator
   indices.  Indices are 0-based in memory, 1-based in the string and JSON
   forms ("g1*g2^-1", [[1,1],[2,-1]]).  Canonical form merges adjacent factors
   with the same index and drops zero exponents, so the empty word is the
   identity and length() counts letters after all cancellation. */
struct Word {
    struct Factor {
        int gen;
        long long exp;
        bool operator==(const Factor& o) const {
            return gen == o.gen && exp == o.exp;
        }
    };

    std::vector<Factor> factors;

    Word() = default;
    explicit Word(std::vector<Factor> f) : factors(std::move(f)) { canonicalize(); }

    void canonicalize();
    bool empty() const { return factors.empty(); }
    uint64_t length() const; // sum of |exp|
    int max_index() const;   // largest 0-based index, -1 if empty
    Word inverse() const;
    Word operator*(const Word& o) const;
    Word pow(long long e) const;
    bool operator==(const Word& o) const { return factors == o.factors; }

    std::string str() const;                    // "1" for the empty word
    static Word parse(const std::string& text); // throws Error("WordSyntax")

    nlohmann::json to_json() const;
    static Word from_json(const nlohmann::json& j);
};

// a^-1 b^-1 a b
Word commutator(const Word& a, const Word& b);

/* Left-balanced commutator tree: leaves must number 2^d; depth-d result is
   the commutator of the two depth-(d-1) subtrees.  Vanishes identically on
   any solvable group of derived length <= d. */
Word balanced_tree_commutator(const std::vector<Word>& leaves);

} // namespace zdense
