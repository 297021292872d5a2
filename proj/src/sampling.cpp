#include "cds/sampling.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cds {

PivotSet::PivotSet(std::initializer_list<std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) insert(b);
}

void PivotSet::insert(std::uint8_t b) {
    if (mask_.test(b)) return;
    mask_.set(b);
    members_.insert(std::upper_bound(members_.begin(), members_.end(), b), b);
}

std::uint8_t PivotSet::canonical() const {
    if (members_.empty()) throw std::logic_error("canonical() on empty pivot set");
    return members_.front();
}

PositionSample build_position_sampling(const Corpus& y, const PivotSet& pivots,
                                       std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("block size k must be >= 1");
    if (y.size() >= std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("text too large: positions are stored in 32 bits");

    PositionSample s;
    s.k = k;
    s.n = y.size();
    s.tau.assign((y.size() + k - 1) / k, 0);

    ByteView text = y.bytes();
    std::uint64_t block_end = k;  // exclusive upper position of current block
    std::size_t block = 0;
    for (std::uint64_t pos = 1; pos <= text.size(); ++pos) {
        // Close out blocks as we pass their boundaries; tau carries the
        // running occurrence count, so empty blocks inherit automatically.
        while (pos > block_end) {
            s.tau[block++] = static_cast<std::uint32_t>(s.residues.size());
            block_end += k;
        }
        if (pivots.contains(text[pos - 1]))
            s.residues.push_back(static_cast<std::uint32_t>(pos % k));
    }
    for (; block < s.tau.size(); ++block)
        s.tau[block] = static_cast<std::uint32_t>(s.residues.size());
    return s;
}

std::uint64_t get_position(const PositionSample& sample, std::uint64_t& block,
                           std::uint64_t i) {
    if (i == 0 || i > sample.occurrence_count())
        throw std::out_of_range("occurrence index out of range: " + std::to_string(i));
    if (block == 0) block = 1;
    // Advance to the first block whose occurrence count reaches i; the
    // hint is trusted never to start past it.
    while (sample.tau[block - 1] < i) ++block;
    std::uint32_t residue = sample.residues[i - 1];
    // Positions divisible by k have residue 0 and sit at the block's
    // upper boundary, not (block-1)*k.
    if (residue == 0) return block * sample.k;
    return (block - 1) * sample.k + residue;
}

std::pair<DistanceSample, std::uint64_t> compute_distance_sampling(
    ByteView s, const PivotSet& pivots) {
    DistanceSample distances;
    std::uint64_t count = 0, prev = 0;
    for (std::uint64_t pos = 1; pos <= s.size(); ++pos) {
        if (!pivots.contains(s[pos - 1])) continue;
        ++count;
        if (prev != 0) distances.push_back(static_cast<std::uint32_t>(pos - prev));
        prev = pos;
    }
    return {std::move(distances), count};
}

DistanceSample distances_from_sample(const PositionSample& sample) {
    DistanceSample distances;
    std::uint64_t n_c = sample.occurrence_count();
    if (n_c < 2) return distances;
    distances.reserve(n_c - 1);
    std::uint64_t block = 1;
    std::uint64_t prev = get_position(sample, block, 1);
    for (std::uint64_t i = 2; i <= n_c; ++i) {
        std::uint64_t cur = get_position(sample, block, i);
        distances.push_back(static_cast<std::uint32_t>(cur - prev));
        prev = cur;
    }
    return distances;
}

DistanceSample distances_fast_path(std::span<const std::uint32_t> residues,
                                   std::uint32_t k) {
    DistanceSample distances;
    if (residues.size() < 2) return distances;
    distances.reserve(residues.size() - 1);
    FastDistanceView view(residues, k);
    for (std::size_t i = 0; i < view.size(); ++i) distances.push_back(view[i]);
    return distances;
}

CdsIndex build_cds_index(const Corpus& y, const PivotSet& pivots, std::uint32_t k) {
    if (pivots.empty()) throw std::invalid_argument("pivot set must be non-empty");

    CdsIndex idx;
    idx.pivots = pivots;
    idx.sample = build_position_sampling(y, pivots, k);
    idx.source = y.fingerprint();

    // One pass over the true gap sequence; any gap >= k disables the
    // residue-only reconstruction but leaves the index usable.
    idx.fast_path_ok = true;
    for (std::uint32_t gap : distances_from_sample(idx.sample)) {
        if (gap >= k) {
            idx.fast_path_ok = false;
            break;
        }
    }
    return idx;
}

CdsIndex build_cds_index(const Corpus& y, std::uint32_t pivot_rank, std::uint32_t k) {
    FrequencyRanking ranking = rank_characters(y);
    return build_cds_index(y, PivotSet::single(ranking.byte_at_rank(pivot_rank)), k);
}

SampledPattern sample_pattern(ByteView x, const PivotSet& pivots) {
    SampledPattern sp;
    sp.length = x.size();
    std::uint64_t prev = 0;
    for (std::uint64_t pos = 1; pos <= x.size(); ++pos) {
        if (!pivots.contains(x[pos - 1])) continue;
        ++sp.pivot_count;
        if (sp.alpha == 0) sp.alpha = pos;
        if (prev != 0) sp.distances.push_back(static_cast<std::uint32_t>(pos - prev));
        prev = pos;
    }
    return sp;
}

}  // namespace cds
