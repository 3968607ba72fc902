#include "zdense/sampler.hpp"

#include "zdense/numeric.hpp"

namespace zdense {

WordSampler::WordSampler(uint64_t seed, int ngens, uint64_t initial_length,
                         uint64_t fail_block)
    : rng_(mix_seed(seed, 0x77726473ULL)),
      ngens_(ngens),
      length_(initial_length),
      fail_block_(fail_block) {
    if (ngens < 1) fail("BadParameter", "sampler needs at least one generator");
    if (initial_length < 1) fail("BadParameter", "initial length must be at least 1");
    if (fail_block < 1) fail("BadParameter", "failure block must be at least 1");
}

Word WordSampler::next() {
    // letters 0..2g-1: letter 2i is g_{i+1}, letter 2i+1 its inverse
    std::uniform_int_distribution<int> first(0, 2 * ngens_ - 1);
    std::uniform_int_distribution<int> later(0, 2 * ngens_ - 2);
    Word w;
    int prev = -1;
    for (uint64_t t = 0; t < length_; t++) {
        int letter;
        if (prev < 0) {
            letter = first(rng_);
        } else {
            // skip the inverse of the previous letter so nothing cancels
            letter = later(rng_);
            if (letter >= (prev ^ 1)) letter++;
        }
        w.factors.push_back({letter / 2, letter % 2 ? -1LL : 1LL});
        prev = letter;
    }
    w.canonicalize();
    return w;
}

void WordSampler::note_failure() {
    failures_++;
    if (failures_ % fail_block_ == 0) length_++;
}

} // namespace zdense
