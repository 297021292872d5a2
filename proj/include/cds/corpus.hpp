#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

using ByteView = std::span<const std::uint8_t>;

// 64-bit FNV-1a over the raw bytes.  Used to tie a saved index back to the
// text it was built from; not a cryptographic hash.
std::uint64_t fnv1a64(ByteView data);

// Identity of a text: content hash plus length.  Two corpora compare equal
// iff both fields match, which is what index loading checks before searching.
struct SourceFingerprint {
    std::uint64_t hash = 0;
    std::uint64_t length = 0;

    bool operator==(const SourceFingerprint&) const = default;
};

// A text held in memory.  Bytes are opaque 8-bit symbols: no encoding or
// case normalisation is ever applied, so 'e' and 'E' are distinct.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::vector<std::uint8_t> bytes, std::string source);

    ByteView bytes() const { return bytes_; }
    std::uint64_t size() const { return bytes_.size(); }
    const std::string& source() const { return source_; }
    SourceFingerprint fingerprint() const { return fingerprint_; }

    // 1-based checked accessor; positions throughout this library are 1-based.
    std::uint8_t at(std::uint64_t pos) const {
        if (pos == 0 || pos > bytes_.size())
            throw std::out_of_range("position " + std::to_string(pos) +
                                    " outside text of length " +
                                    std::to_string(bytes_.size()));
        return bytes_[pos - 1];
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::string source_;
    SourceFingerprint fingerprint_;
};

// Reads a whole file as binary.  Throws std::runtime_error naming the path
// if the file cannot be opened or read.
Corpus load_corpus(const std::string& path);

// Wraps an in-memory string; `label` stands in for a file name.
Corpus make_corpus(std::string_view text, std::string label = "<memory>");

// Byte frequencies and the induced rank order.  Rank 1 is the most frequent
// byte; ties break toward the smaller byte value.  `order` lists only bytes
// that actually occur.
struct FrequencyRanking {
    std::array<std::uint64_t, 256> counts{};
    std::vector<std::uint8_t> order;

    std::size_t distinct() const { return order.size(); }

    // rank is 1-based; throws std::out_of_range past the distinct count.
    std::uint8_t byte_at_rank(std::uint32_t rank) const;
};

FrequencyRanking rank_characters(const Corpus& corpus);

// Occurrence-gap summary for one candidate pivot byte.  Gaps are the
// distances between consecutive occurrences of the byte; leading and
// trailing stretches of the text do not count, so a byte occurring once
// has max_gap == avg_gap == 0.
struct PivotStats {
    std::uint8_t pivot = 0;
    std::uint32_t rank = 0;
    std::uint64_t count = 0;
    std::uint64_t max_gap = 0;
    double avg_gap = 0.0;
};

// Stats for the `max_rank` most frequent bytes, most frequent first.
// Returns fewer entries when the corpus has fewer distinct bytes.
std::vector<PivotStats> distance_stats(const Corpus& corpus, std::uint32_t max_rank);

}  // namespace cds
