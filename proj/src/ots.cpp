#include "cds/ots.hpp"

#include <algorithm>
#include <stdexcept>

#include "cds/matchers.hpp"

namespace cds {

OtsPattern ots_sample_pattern(ByteView x, const std::bitset<256>& sampled_alphabet) {
    OtsPattern p;
    for (std::uint64_t pos = 1; pos <= x.size(); ++pos) {
        if (!sampled_alphabet.test(x[pos - 1])) continue;
        if (p.alpha == 0) p.alpha = pos;
        p.sampled.push_back(x[pos - 1]);
    }
    return p;
}

OtsIndex build_ots_index(const Corpus& y, std::uint32_t removed_count, std::uint32_t q) {
    if (q == 0) throw std::invalid_argument("interval factor q must be >= 1");
    FrequencyRanking ranking = rank_characters(y);
    if (removed_count >= ranking.distinct() && !(removed_count == 0 && ranking.distinct() == 0))
        throw std::invalid_argument("removed_count must leave at least one symbol");

    OtsIndex idx;
    idx.q = q;
    idx.n = y.size();
    idx.source = y.fingerprint();
    idx.sampled_alphabet.set();
    for (std::uint32_t r = 0; r < removed_count; ++r)
        idx.sampled_alphabet.reset(ranking.order[r]);

    ByteView text = y.bytes();
    for (std::uint64_t pos = 1; pos <= text.size(); ++pos) {
        if (!idx.sampled_alphabet.test(text[pos - 1])) continue;
        idx.sampled_text.push_back(text[pos - 1]);
        if (idx.sampled_text.size() % q == 0) idx.rho.push_back(pos);
    }
    return idx;
}

SearchOutcome ots_search(ByteView x, const OtsIndex& idx, const Corpus& y) {
    if (x.empty()) throw std::invalid_argument("ots_search: empty pattern");
    if (!(idx.source == y.fingerprint()))
        throw TextMismatchError("ots_search: index was built from a different text (fingerprint mismatch)");

    SearchOutcome out;
    const std::uint64_t m = x.size(), n = y.size();
    if (m > n) return out;

    ByteView text = y.bytes();
    auto verify_at = [&](std::uint64_t p) {  // 1-based start, bounds pre-checked
        ++out.stats.verifications;
        for (std::uint64_t i = 0; i < m; ++i) {
            ++out.stats.text_inspections;
            if (text[p - 1 + i] != x[i]) return false;
        }
        return true;
    };

    OtsPattern xp = ots_sample_pattern(x, idx.sampled_alphabet);
    if (xp.sampled.empty()) {
        // Nothing of the pattern survives sampling; scan the text directly.
        ++out.stats.candidates;
        MatchList found = horspool_search(x, text);
        out.stats.text_inspections += found.inspections;
        out.matches = std::move(found.positions);
        return out;
    }

    MatchList hits = horspool_search(xp.sampled, idx.sampled_text);
    out.stats.sampled_inspections += hits.inspections;

    // A hit at sampled position r fixes where x-hat sits in y-hat but not
    // where that subsequence sits in y.  The neighbouring rho anchors
    // bracket the original position of y-hat[r]: sampled positions
    // strictly increase, so it lies at least r-u*q past anchor u and at
    // least (u+1)*q-r before anchor u+1 (the text end bounds the last
    // stretch).  Every alignment in the bracket is checked.
    const std::uint64_t n_hat = idx.sampled_length(), q = idx.q;
    for (std::uint64_t r : hits.positions) {
        std::uint64_t u = r / q;
        std::uint64_t low = (u == 0 ? 0 : idx.rho[u - 1]) + (r - u * q);
        std::uint64_t high = u < idx.rho.size()
                                 ? idx.rho[u] - ((u + 1) * q - r)
                                 : n - (n_hat - r);
        for (std::uint64_t v = low; v <= high; ++v) {
            // v = conjectured text position of y-hat[r], aligned to x[alpha]
            ++out.stats.candidates;
            if (v < xp.alpha) continue;
            std::uint64_t p = v - xp.alpha + 1;
            if (p + m - 1 > n) continue;
            if (verify_at(p)) out.matches.push_back(p);
        }
    }

    // Overlapping brackets can attribute one text match to two filter
    // hits; the reported set is deduplicated.
    std::sort(out.matches.begin(), out.matches.end());
    out.matches.erase(std::unique(out.matches.begin(), out.matches.end()),
                      out.matches.end());
    return out;
}

}  // namespace cds
