#include "cds/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace cds {

std::uint64_t fnv1a64(ByteView data) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : data) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

Corpus::Corpus(std::vector<std::uint8_t> bytes, std::string source)
    : bytes_(std::move(bytes)), source_(std::move(source)) {
    fingerprint_ = {fnv1a64(bytes_), bytes_.size()};
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::vector<std::uint8_t> bytes(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error("read error on corpus file: " + path);
    return Corpus(std::move(bytes), path);
}

Corpus make_corpus(std::string_view text, std::string label) {
    return Corpus(std::vector<std::uint8_t>(text.begin(), text.end()), std::move(label));
}

std::uint8_t FrequencyRanking::byte_at_rank(std::uint32_t rank) const {
    if (rank == 0 || rank > order.size())
        throw std::out_of_range("character rank out of range: " + std::to_string(rank));
    return order[rank - 1];
}

FrequencyRanking rank_characters(const Corpus& corpus) {
    FrequencyRanking r;
    for (std::uint8_t b : corpus.bytes()) ++r.counts[b];
    for (unsigned v = 0; v < 256; ++v)
        if (r.counts[v] > 0) r.order.push_back(static_cast<std::uint8_t>(v));
    // Stable on the ascending byte values, so ties go to the smaller byte.
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](std::uint8_t a, std::uint8_t b) { return r.counts[a] > r.counts[b]; });
    return r;
}

std::vector<PivotStats> distance_stats(const Corpus& corpus, std::uint32_t max_rank) {
    FrequencyRanking ranking = rank_characters(corpus);
    std::uint32_t limit =
        std::min<std::uint32_t>(max_rank, static_cast<std::uint32_t>(ranking.distinct()));

    std::vector<PivotStats> stats(limit);
    std::array<int, 256> slot{};
    slot.fill(-1);
    for (std::uint32_t i = 0; i < limit; ++i) {
        stats[i].pivot = ranking.order[i];
        stats[i].rank = i + 1;
        slot[ranking.order[i]] = static_cast<int>(i);
    }

    // Gaps are measured between consecutive occurrences only; a pivot seen
    // once has no gaps and reports max_gap == avg_gap == 0.
    std::array<std::uint64_t, 256> last{};  // previous occurrence, 0 = none yet
    ByteView y = corpus.bytes();
    for (std::uint64_t pos = 1; pos <= y.size(); ++pos) {
        int s = slot[y[pos - 1]];
        if (s < 0) continue;
        PivotStats& ps = stats[static_cast<std::size_t>(s)];
        if (last[ps.pivot] != 0) {
            std::uint64_t gap = pos - last[ps.pivot];
            ps.max_gap = std::max(ps.max_gap, gap);
            ps.avg_gap += static_cast<double>(gap);
        }
        ++ps.count;
        last[ps.pivot] = pos;
    }
    for (PivotStats& ps : stats)
        if (ps.count > 1) ps.avg_gap /= static_cast<double>(ps.count - 1);
    return stats;
}

}  // namespace cds
