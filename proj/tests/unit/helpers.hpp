#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/matchers.hpp"
#include "cds/sampling.hpp"

namespace testutil {

// Uniform random text over the first `sigma` letters of a byte alphabet.
// sigma <= 26 draws lowercase letters; larger sigma draws raw byte values,
// which exercises symbols outside the printable range.
inline std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    std::uniform_int_distribution<unsigned> dist(0, sigma - 1);
    std::string s(n, '\0');
    for (auto& c : s) {
        unsigned v = dist(rng);
        c = sigma <= 26 ? static_cast<char>('a' + v) : static_cast<char>(v);
    }
    return s;
}

// A pattern cut from the text itself (guaranteed at least one occurrence).
inline std::string extract_pattern(std::mt19937_64& rng, const std::string& text, std::size_t m) {
    if (m >= text.size()) return text;
    std::uniform_int_distribution<std::size_t> dist(0, text.size() - m);
    return text.substr(dist(rng), m);
}

// Reference occurrence list: positions are 1-based window starts.
inline std::vector<std::uint64_t> oracle_matches(const std::string& pattern, const std::string& text) {
    cds::Corpus pat = cds::make_corpus(pattern, "<pat>");
    cds::Corpus txt = cds::make_corpus(text, "<txt>");
    return cds::naive_search(pat.bytes(), txt.bytes()).positions;
}

// Reference pivot-occurrence positions: 1-based indices of every byte in `pivots`.
inline std::vector<std::uint64_t> scan_positions(const std::string& text, const cds::PivotSet& pivots) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (pivots.contains(static_cast<std::uint8_t>(text[i]))) out.push_back(i + 1);
    }
    return out;
}

// Reference distance list: deltas between consecutive pivot occurrences.
inline std::vector<std::uint32_t> scan_distances(const std::string& text, const cds::PivotSet& pivots) {
    auto pos = scan_positions(text, pivots);
    std::vector<std::uint32_t> out;
    for (std::size_t i = 1; i < pos.size(); ++i) out.push_back(static_cast<std::uint32_t>(pos[i] - pos[i - 1]));
    return out;
}

}  // namespace testutil
