#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cds {

// The matchers run over any random-access sequence of unsigned symbols:
// raw text bytes, or the wider integers of a sampled distance sequence.
template <typename S>
concept symbol_sequence = requires(const S& s, std::size_t i) {
    { s.size() } -> std::convertible_to<std::size_t>;
    { s[i] } -> std::convertible_to<std::uint64_t>;
};

enum class MatcherKind { horspool, kmp, naive };

// Occurrences as 1-based start positions, ascending, overlaps included,
// plus the number of haystack symbols the matcher read.  Every read of a
// haystack symbol counts once, including reads that only feed a shift.
struct MatchList {
    std::vector<std::uint64_t> positions;
    std::uint64_t inspections = 0;
};

// Boyer-Moore-Horspool.  Shift table is keyed on the low 8 bits of the
// symbol, which stays sound for wider symbols: colliding symbols share the
// most conservative (smallest) shift because the table is written in
// left-to-right pattern order.  Worst case O(n*m), sublinear on average.
template <symbol_sequence P, symbol_sequence H>
MatchList horspool_search(const P& pat, const H& hay) {
    MatchList out;
    const std::size_t m = pat.size(), n = hay.size();
    if (m == 0 || m > n) return out;

    std::array<std::size_t, 256> shift;
    shift.fill(m);
    for (std::size_t i = 0; i + 1 < m; ++i)
        shift[static_cast<std::uint8_t>(pat[i])] = m - 1 - i;

    std::size_t s = 0;  // 0-based window start
    while (s + m <= n) {
        std::uint64_t last = static_cast<std::uint64_t>(hay[s + m - 1]);
        ++out.inspections;
        if (last == static_cast<std::uint64_t>(pat[m - 1])) {
            std::size_t i = m - 1;
            while (i > 0) {
                ++out.inspections;
                if (static_cast<std::uint64_t>(hay[s + i - 1]) !=
                    static_cast<std::uint64_t>(pat[i - 1]))
                    break;
                --i;
            }
            if (i == 0) out.positions.push_back(s + 1);
        }
        s += shift[static_cast<std::uint8_t>(last)];
    }
    return out;
}

// Knuth-Morris-Pratt, worst case O(n + m); every haystack symbol is read
// exactly once thanks to the failure function.
template <symbol_sequence P, symbol_sequence H>
MatchList kmp_search(const P& pat, const H& hay) {
    MatchList out;
    const std::size_t m = pat.size(), n = hay.size();
    if (m == 0 || m > n) return out;

    // failure[i] = length of the longest proper border of pat[0..i]
    std::vector<std::size_t> failure(m, 0);
    for (std::size_t i = 1, len = 0; i < m;) {
        if (static_cast<std::uint64_t>(pat[i]) == static_cast<std::uint64_t>(pat[len])) {
            failure[i++] = ++len;
        } else if (len > 0) {
            len = failure[len - 1];
        } else {
            failure[i++] = 0;
        }
    }

    std::size_t q = 0;  // symbols of pat currently matched
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t c = static_cast<std::uint64_t>(hay[i]);
        ++out.inspections;
        while (q > 0 && c != static_cast<std::uint64_t>(pat[q])) q = failure[q - 1];
        if (c == static_cast<std::uint64_t>(pat[q])) ++q;
        if (q == m) {
            out.positions.push_back(i + 2 - m);
            q = failure[q - 1];
        }
    }
    return out;
}

// Check-every-position reference matcher.  This is the oracle the fancier
// algorithms are tested against, so it stays as plain as possible.  An
// empty pattern matches at every position 1..n+1 by convention.
template <symbol_sequence P, symbol_sequence H>
MatchList naive_search(const P& pat, const H& hay) {
    MatchList out;
    const std::size_t m = pat.size(), n = hay.size();
    if (m > n) return out;
    for (std::size_t s = 0; s + m <= n; ++s) {
        std::size_t i = 0;
        while (i < m) {
            ++out.inspections;
            if (static_cast<std::uint64_t>(hay[s + i]) !=
                static_cast<std::uint64_t>(pat[i]))
                break;
            ++i;
        }
        if (i == m) out.positions.push_back(s + 1);
    }
    return out;
}

template <symbol_sequence P, symbol_sequence H>
MatchList run_matcher(MatcherKind kind, const P& pat, const H& hay) {
    switch (kind) {
        case MatcherKind::horspool: return horspool_search(pat, hay);
        case MatcherKind::kmp: return kmp_search(pat, hay);
        case MatcherKind::naive: return naive_search(pat, hay);
    }
    throw std::invalid_argument("unknown matcher kind");
}

}  // namespace cds
