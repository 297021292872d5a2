#pragma once

#include <bitset>
#include <cstdint>
#include <span>
#include <vector>

#include "cds/corpus.hpp"

namespace cds {

// The set C of pivot bytes.  Usually a single byte (one of the most
// frequent characters of the text); building and sampling accept any
// non-empty set.
class PivotSet {
public:
    PivotSet() = default;
    PivotSet(std::initializer_list<std::uint8_t> bytes);

    static PivotSet single(std::uint8_t b) { return PivotSet{b}; }

    void insert(std::uint8_t b);
    bool contains(std::uint8_t b) const { return mask_.test(b); }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    // Members ascending; the smallest doubles as the canonical pivot for
    // reporting.
    const std::vector<std::uint8_t>& members() const { return members_; }
    std::uint8_t canonical() const;

    bool operator==(const PivotSet&) const = default;

private:
    std::bitset<256> mask_;
    std::vector<std::uint8_t> members_;
};

// The k-bounded position sample: for the i-th pivot occurrence at text
// position delta(i) (1-based), residues[i-1] = delta(i) mod k, and
// tau[b-1] = number of occurrences with delta <= b*k.  Storing positions
// mod k plus the per-block counters is what lets one byte per occurrence
// cover texts of any length.
struct PositionSample {
    std::vector<std::uint32_t> residues;  // delta(i) mod k, one per occurrence
    std::vector<std::uint32_t> tau;       // ceil(n/k) entries, non-decreasing
    std::uint32_t k = 0;
    std::uint64_t n = 0;

    std::uint64_t occurrence_count() const { return residues.size(); }

    bool operator==(const PositionSample&) const = default;
};

// Distances between consecutive pivot occurrences, the sequence
// delta(i+1) - delta(i); every entry is >= 1.
using DistanceSample = std::vector<std::uint32_t>;

// A pattern reduced to pivot terms: its occurrence distances, the
// occurrence count m_c, and alpha, the 1-based offset of the first pivot
// occurrence (0 when the pattern has none).
struct SampledPattern {
    DistanceSample distances;
    std::uint64_t pivot_count = 0;
    std::uint64_t alpha = 0;
    std::uint64_t length = 0;
};

// The complete searchable index: position sample plus the pivot set, the
// fast-path flag (true iff every occurrence gap is < k, the precondition
// for reconstructing distances from residues alone), and the fingerprint
// of the text it was built from.
struct CdsIndex {
    PositionSample sample;
    PivotSet pivots;
    bool fast_path_ok = false;
    SourceFingerprint source;

    std::uint32_t k() const { return sample.k; }
    std::uint64_t n() const { return sample.n; }
    std::uint64_t occurrence_count() const { return sample.occurrence_count(); }

    bool operator==(const CdsIndex&) const = default;
};

// Single pass over the text.  k >= 1 (throws std::invalid_argument
// otherwise; k <= 256 matters only for the one-byte-per-entry file
// format).  A text without pivot occurrences yields empty residues and
// all-zero tau.  Texts of 2^32 bytes or more are rejected: positions are
// stored in 32 bits here and in the file format.
PositionSample build_position_sampling(const Corpus& y, const PivotSet& pivots,
                                       std::uint32_t k);

// Recovers delta(i), the text position of the i-th pivot occurrence
// (1 <= i <= n_c, throws std::out_of_range otherwise).  `block` is a
// caller-held hint that only moves forward; starting from the previous
// occurrence's block makes a monotone scan of i cost O(n_c + n/k) total.
// The hint must not be past occurrence i's true block (use 1 if unsure).
std::uint64_t get_position(const PositionSample& sample, std::uint64_t& block,
                           std::uint64_t i);

// Distances between consecutive pivot occurrences of `s`, plus the total
// occurrence count.  Works on patterns (x-bar) and doubles as the
// reference oracle for the index-based reconstructions below.
std::pair<DistanceSample, std::uint64_t> compute_distance_sampling(
    ByteView s, const PivotSet& pivots);

// Reconstructs the distance sequence from the sample via successive
// get_position calls: one pass over residues, one amortized pass over tau.
// Valid for any gap sizes.  Zero or one occurrence yields an empty result.
DistanceSample distances_from_sample(const PositionSample& sample);

// Residue-only reconstruction: distance = next - prev when the residue
// grew, else next + k - prev.  Requires every gap < k (CdsIndex
// fast_path_ok); silently wrong otherwise, so callers must check the flag.
DistanceSample distances_fast_path(std::span<const std::uint32_t> residues,
                                   std::uint32_t k);

// Zero-copy equivalent of distances_fast_path: evaluates distance i on
// demand from two residues, so matchers can scan y-bar without
// materializing it.  Same precondition as distances_fast_path.
class FastDistanceView {
public:
    FastDistanceView(std::span<const std::uint32_t> residues, std::uint32_t k)
        : residues_(residues), k_(k) {}

    std::size_t size() const {
        return residues_.empty() ? 0 : residues_.size() - 1;
    }
    std::uint32_t operator[](std::size_t i) const {
        std::uint32_t prev = residues_[i], next = residues_[i + 1];
        return next > prev ? next - prev : next + k_ - prev;
    }

private:
    std::span<const std::uint32_t> residues_;
    std::uint32_t k_;
};

// Builds the index for an explicit pivot set or for the rank-th most
// frequent byte (1-based; throws std::out_of_range past the distinct
// count, std::invalid_argument on an empty set).  fast_path_ok is
// computed by one pass over the gaps.  A max gap >= k does not fail the
// build: the index stays valid through the general path.
CdsIndex build_cds_index(const Corpus& y, const PivotSet& pivots, std::uint32_t k);
CdsIndex build_cds_index(const Corpus& y, std::uint32_t pivot_rank, std::uint32_t k);

// Reduces a pattern to pivot terms for the search dispatch.
SampledPattern sample_pattern(ByteView x, const PivotSet& pivots);

}  // namespace cds
