#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/matchers.hpp"
#include "cds/sampling.hpp"

namespace cds {

// Raised when an index is queried against a text other than the one it
// was built from (fingerprint or length differs).
struct TextMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Work counters for one search call.  Deterministic: identical inputs
// produce identical counters.
//   verifications       candidate windows checked against the text
//   text_inspections    bytes of y read (verification + matcher runs on y)
//   sampled_inspections sampled symbols read (residues and distances)
//   candidates          candidate windows / intervals produced by filtering
struct SearchStats {
    std::uint64_t verifications = 0;
    std::uint64_t text_inspections = 0;
    std::uint64_t sampled_inspections = 0;
    std::uint64_t candidates = 0;
};

struct SearchOutcome {
    std::vector<std::uint64_t> matches;  // 1-based starts, strictly increasing
    SearchStats stats;
};

// Knobs and probes.  The debug pointers are for tests: candidate_log
// records every candidate start position before verification,
// text_read_counts (resized to n) counts how often each text position is
// read, which is how the bounded-re-reading guarantee is checked.
struct SearchOptions {
    MatcherKind matcher = MatcherKind::horspool;
    std::vector<std::uint64_t>* candidate_log = nullptr;
    std::vector<std::uint32_t>* text_read_counts = nullptr;
};

// True iff x occurs at the window y[offset+1 .. offset+m].  Out-of-range
// windows (offset < 0 or extending past y) are false without touching y.
bool verify(ByteView x, ByteView y, std::int64_t offset);

// Pattern contains no pivot byte.  Matches cannot straddle a pivot
// occurrence, so the underlying matcher (opts.matcher) runs only on the
// inter-pivot intervals longer than m, including the two sentinel
// intervals before the first and after the last occurrence.
SearchOutcome search_zero(ByteView x, const CdsIndex& idx, const Corpus& y,
                          const SearchOptions& opts = {});

// Pattern contains exactly one pivot occurrence, at offset alpha.  Every
// text occurrence of the pivot anchors one candidate at delta(i)-alpha+1;
// the candidate is verified only when the gap before delta(i) exceeds
// alpha-1 and the gap after exceeds m-alpha (otherwise another pivot
// occurrence would fall inside the window, contradicting m_c = 1).
SearchOutcome search_one(ByteView x, const CdsIndex& idx, const Corpus& y,
                         const SearchOptions& opts = {});

// Pattern contains >= 2 pivot occurrences: filter by searching the
// pattern's distance sequence inside the text's distance sequence
// (reconstructed residue-only when the index allows, else via tau), then
// verify each candidate.  With opts.matcher == kmp the verification
// resumes from the furthest text position already matched, so no text
// position is re-read more than a constant number of times.
SearchOutcome search_two_plus(ByteView x, const CdsIndex& idx, const Corpus& y,
                              const SearchOptions& opts = {});

// Dispatches on the pattern's pivot-occurrence count (0 / 1 / >= 2).
// Throws std::invalid_argument on an empty pattern, TextMismatchError if
// idx was not built from y.  Patterns longer than the text match nowhere.
SearchOutcome search(ByteView x, const CdsIndex& idx, const Corpus& y,
                     const SearchOptions& opts = {});

}  // namespace cds
