#include "cds/search.hpp"

#include <algorithm>
#include <string>

namespace cds {
namespace {

// Shared verification state: counts every text read, optionally per
// position, and (in guarded mode) remembers the furthest matched window.
struct Verifier {
    ByteView x;
    ByteView y;
    SearchStats& stats;
    std::vector<std::uint32_t>* read_counts;

    // guarded-mode state: at candidate prev_p (1-based), the first
    // `matched` pattern bytes are known equal to the text
    std::uint64_t prev_p = 0;
    std::uint64_t matched = 0;
    std::vector<std::size_t> z = {};  // self-overlap lengths, built on demand

    std::uint8_t read(std::uint64_t pos) {  // 1-based
        ++stats.text_inspections;
        if (read_counts) ++(*read_counts)[pos - 1];
        return y[pos - 1];
    }

    bool in_bounds(std::int64_t p) const {
        return p >= 1 &&
               static_cast<std::uint64_t>(p) + x.size() - 1 <= y.size();
    }

    // Plain scan: compares until mismatch or end of pattern, returns the
    // matched prefix length.  `from` skips bytes already known to match.
    std::uint64_t scan(std::uint64_t p, std::uint64_t from) {
        std::uint64_t i = from;
        while (i < x.size() && read(p + i) == x[i]) ++i;
        return i;
    }

    bool check(std::int64_t p) {
        ++stats.verifications;
        if (!in_bounds(p)) return false;
        return scan(static_cast<std::uint64_t>(p), 0) == x.size();
    }

    // Guarded check for ascending candidates: reuses the overlap between
    // this window and the furthest previously matched one, so the shared
    // region is never re-read.  Sound because the pattern's self-overlap
    // table says exactly how far a shifted copy can agree with itself.
    bool check_guarded(std::int64_t p_signed) {
        ++stats.verifications;
        if (!in_bounds(p_signed)) return false;
        std::uint64_t p = static_cast<std::uint64_t>(p_signed);

        std::uint64_t start = 0;  // pattern bytes taken as already matched
        if (prev_p != 0 && p > prev_p && p - prev_p < matched) {
            std::uint64_t shift = p - prev_p;
            if (z.empty()) build_z();
            std::uint64_t overlap = matched - shift;  // known text bytes at p
            if (z[shift] < overlap) return false;     // mismatch inside overlap
            start = overlap;                          // resume after it
        }
        std::uint64_t got = scan(p, start);
        if (prev_p == 0 || p + got > prev_p + matched) {
            prev_p = p;
            matched = got;
        }
        return got == x.size();
    }

    void build_z() {
        std::size_t m = x.size();
        z.assign(m, 0);
        z[0] = m;
        for (std::size_t i = 1, l = 0, r = 0; i < m; ++i) {
            if (i < r) z[i] = std::min(r - i, z[i - l]);
            while (i + z[i] < m && x[z[i]] == x[i + z[i]]) ++z[i];
            if (i + z[i] > r) l = i, r = i + z[i];
        }
    }
};

// Text window handed to a matcher in Search-0: reads count as text
// inspections via MatchList, and per-position counts flow through here.
struct CountedWindow {
    ByteView y;
    std::uint64_t base;  // 0-based offset of the window in y
    std::uint64_t length;
    std::vector<std::uint32_t>* read_counts;

    std::size_t size() const { return length; }
    std::uint8_t operator[](std::size_t i) const {
        if (read_counts) ++(*read_counts)[base + i];
        return y[base + i];
    }
};

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

std::vector<std::uint32_t>* prepare_read_counts(const SearchOptions& opts,
                                                std::uint64_t n) {
    if (opts.text_read_counts) opts.text_read_counts->assign(n, 0);
    return opts.text_read_counts;
}

// Reads delta(i) through the sample, counting the residue access.
std::uint64_t next_position(const PositionSample& s, std::uint64_t& block,
                            std::uint64_t i, SearchStats& stats) {
    ++stats.sampled_inspections;
    return get_position(s, block, i);
}

}  // namespace

bool verify(ByteView x, ByteView y, std::int64_t offset) {
    if (offset < 0) return false;
    std::uint64_t s = static_cast<std::uint64_t>(offset);
    if (s + x.size() > y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[s + i] != x[i]) return false;
    return true;
}

SearchOutcome search_zero(ByteView x, const CdsIndex& idx, const Corpus& y,
                          const SearchOptions& opts) {
    SearchOutcome out;
    require(!x.empty(), "search_zero: empty pattern");
    require(x.size() <= y.size(), "search_zero: pattern longer than text");
    SampledPattern sp = sample_pattern(x, idx.pivots);
    require(sp.pivot_count == 0, "search_zero: pattern contains a pivot byte");

    const PositionSample& sample = idx.sample;
    auto* read_counts = prepare_read_counts(opts, y.size());
    const std::uint64_t m = x.size(), n_c = sample.occurrence_count();

    // Intervals between consecutive occurrences (with sentinels at 0 and
    // n+1); only those with gap > m can contain a pivot-free match.
    std::uint64_t block = 1, prev = 0;
    auto search_interval = [&](std::uint64_t lo, std::uint64_t hi) {
        // candidate window: y[lo..hi], both 1-based inclusive
        if (hi < lo || hi - lo + 1 < m) return;
        ++out.stats.candidates;
        if (opts.candidate_log) opts.candidate_log->push_back(lo);
        CountedWindow window{y.bytes(), lo - 1, hi - lo + 1, read_counts};
        MatchList found = run_matcher(opts.matcher, x, window);
        out.stats.text_inspections += found.inspections;
        for (std::uint64_t pos : found.positions)
            out.matches.push_back(lo + pos - 1);
    };
    for (std::uint64_t i = 1; i <= n_c; ++i) {
        std::uint64_t cur = next_position(sample, block, i, out.stats);
        if (cur - prev > m) search_interval(prev + 1, cur - 1);
        prev = cur;
    }
    if (y.size() + 1 - prev > m) search_interval(prev + 1, y.size());
    return out;
}

SearchOutcome search_one(ByteView x, const CdsIndex& idx, const Corpus& y,
                         const SearchOptions& opts) {
    SearchOutcome out;
    require(!x.empty(), "search_one: empty pattern");
    SampledPattern sp = sample_pattern(x, idx.pivots);
    require(sp.pivot_count == 1, "search_one: pattern must contain the pivot exactly once");

    const PositionSample& sample = idx.sample;
    Verifier verifier{x, y.bytes(), out.stats, prepare_read_counts(opts, y.size())};
    const std::uint64_t m = x.size(), alpha = sp.alpha;
    const std::uint64_t n_c = sample.occurrence_count();

    // Each pivot occurrence anchors at most one candidate.  The gap
    // checks reject anchors whose window would contain a second pivot
    // occurrence (impossible for a pattern with m_c = 1), so no window is
    // verified twice and no true match is lost.
    std::uint64_t block = 1, prev = 0;
    std::uint64_t cur =
        n_c > 0 ? next_position(sample, block, 1, out.stats) : 0;
    for (std::uint64_t i = 1; i <= n_c; ++i) {
        std::uint64_t next = i < n_c
                                 ? next_position(sample, block, i + 1, out.stats)
                                 : y.size() + 1;
        if (cur - prev > alpha - 1 && next - cur > m - alpha) {
            // The gap checks already imply 1 <= p and p+m-1 <= n.
            std::uint64_t p = cur - alpha + 1;
            ++out.stats.candidates;
            if (opts.candidate_log) opts.candidate_log->push_back(p);
            if (verifier.check(static_cast<std::int64_t>(p)))
                out.matches.push_back(p);
        }
        prev = cur;
        cur = next;
    }
    return out;
}

SearchOutcome search_two_plus(ByteView x, const CdsIndex& idx, const Corpus& y,
                              const SearchOptions& opts) {
    SearchOutcome out;
    require(!x.empty(), "search_two_plus: empty pattern");
    SampledPattern sp = sample_pattern(x, idx.pivots);
    require(sp.pivot_count >= 2, "search_two_plus: pattern needs >= 2 pivot occurrences");

    const PositionSample& sample = idx.sample;
    if (sample.occurrence_count() < sp.pivot_count) return out;

    // Filtering phase: occurrences of the pattern's distance sequence
    // inside the text's.  The distance sequence is reconstructed for this
    // search only — residue-only view when every gap < k, otherwise
    // materialized through tau — and never persisted.
    MatchList hits;
    if (idx.fast_path_ok) {
        FastDistanceView view(sample.residues, sample.k);
        hits = run_matcher(opts.matcher, sp.distances, view);
    } else {
        DistanceSample distances = distances_from_sample(sample);
        out.stats.sampled_inspections += sample.occurrence_count();
        hits = run_matcher(opts.matcher, sp.distances, distances);
    }
    out.stats.sampled_inspections += hits.inspections;

    Verifier verifier{x, y.bytes(), out.stats, prepare_read_counts(opts, y.size())};
    const bool guarded = opts.matcher == MatcherKind::kmp;

    // A hit at distance position j aligns the pattern's first pivot with
    // text occurrence j, so the window starts alpha-1 bytes earlier.
    std::uint64_t block = 1;
    for (std::uint64_t j : hits.positions) {
        std::uint64_t anchor = next_position(sample, block, j, out.stats);
        std::int64_t p = static_cast<std::int64_t>(anchor) -
                         static_cast<std::int64_t>(sp.alpha) + 1;
        ++out.stats.candidates;
        if (opts.candidate_log) opts.candidate_log->push_back(
            static_cast<std::uint64_t>(std::max<std::int64_t>(p, 0)));
        bool ok = guarded ? verifier.check_guarded(p) : verifier.check(p);
        if (ok) out.matches.push_back(static_cast<std::uint64_t>(p));
    }
    return out;
}

SearchOutcome search(ByteView x, const CdsIndex& idx, const Corpus& y,
                     const SearchOptions& opts) {
    if (x.empty()) throw std::invalid_argument("search: empty pattern");
    if (!(idx.source == y.fingerprint()))
        throw TextMismatchError("search: index was built from a different text (fingerprint mismatch)");
    if (x.size() > y.size()) return {};

    switch (std::min<std::uint64_t>(sample_pattern(x, idx.pivots).pivot_count, 2)) {
        case 0: return search_zero(x, idx, y, opts);
        case 1: return search_one(x, idx, y, opts);
        default: return search_two_plus(x, idx, y, opts);
    }
}

}  // namespace cds
