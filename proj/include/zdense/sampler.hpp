#pragma once
#include <cstdint>
#include <random>

#include "zdense/errors.hpp"
#include "zdense/gen_set.hpp"
#include "zdense/word.hpp"

namespace zdense {

/* Deterministic stream of random words.  Starts at length 5; every
   `fail_block` recorded failures the target length grows by one (and never
   shrinks).  Words come out canonical with length exactly the current
   target: consecutive letters never cancel by construction. */
class WordSampler {
public:
    WordSampler(uint64_t seed, int ngens, uint64_t initial_length = 5,
                uint64_t fail_block = 20);

    Word next();
    void note_failure();
    uint64_t current_length() const { return length_; }
    uint64_t failures() const { return failures_; }

private:
    std::mt19937_64 rng_;
    int ngens_;
    uint64_t length_;
    uint64_t fail_block_;
    uint64_t failures_ = 0;
};

struct SampleOutcome {
    bool found = false;
    Word word;
    uint64_t tried = 0;
};

/* Draw until pred(word) holds or the budget runs out; every miss feeds the
   sampler's length schedule. */
template <class Pred>
SampleOutcome sample_word(WordSampler& s, Pred&& pred, uint64_t budget) {
    if (budget < 1) fail("BadParameter", "sampling budget must be at least 1");
    for (uint64_t t = 1; t <= budget; t++) {
        Word w = s.next();
        if (pred(w)) return {true, std::move(w), t};
        s.note_failure();
    }
    return {false, Word(), budget};
}

/* Convenience form: predicate sees the exact evaluation in G. */
template <class Pred>
SampleOutcome sample_word_eval(WordSampler& s, const GenSet& G, Pred&& pred,
                               uint64_t budget) {
    return sample_word(
        s, [&](const Word& w) { return pred(G.eval(w)); }, budget);
}

} // namespace zdense
