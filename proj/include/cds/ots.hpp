#pragma once

#include <bitset>
#include <cstdint>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/search.hpp"

namespace cds {

// Occurrence-text-sampling baseline: drop the most frequent bytes from
// the alphabet, keep the subsequence of the text over the remaining
// (sampled) alphabet, and map every q-th sampled symbol back to its
// original position so verification windows can be located.
struct OtsIndex {
    std::bitset<256> sampled_alphabet;       // bit b set = byte b is kept
    std::vector<std::uint8_t> sampled_text;  // y-hat
    std::vector<std::uint64_t> rho;          // rho[i-1] = position of y-hat[q*i]
    std::uint32_t q = 0;
    std::uint64_t n = 0;
    SourceFingerprint source;

    std::uint64_t sampled_length() const { return sampled_text.size(); }

    bool operator==(const OtsIndex&) const = default;
};

// A pattern restricted to the sampled alphabet: the subsequence x-hat and
// alpha, the 1-based offset of the first sampled symbol (0 if none).
struct OtsPattern {
    std::vector<std::uint8_t> sampled;
    std::uint64_t alpha = 0;
};

OtsPattern ots_sample_pattern(ByteView x, const std::bitset<256>& sampled_alphabet);

// Removes the `removed_count` most frequent bytes of y (ties to the
// smaller byte value) and samples the rest; rho records every q-th
// sampled position.  q >= 1; removed_count must leave at least one
// distinct byte (std::invalid_argument otherwise).  removed_count == 0
// keeps everything, making y-hat == y.
OtsIndex build_ots_index(const Corpus& y, std::uint32_t removed_count, std::uint32_t q);

// Finds x-hat in y-hat with Horspool, then tries every text alignment the
// rho anchors admit for each hit, verifying against the original text.
// A pattern with no sampled symbol degrades to a plain Horspool scan of
// y.  Errors as in search(): empty pattern, fingerprint mismatch.
SearchOutcome ots_search(ByteView x, const OtsIndex& idx, const Corpus& y);

}  // namespace cds
