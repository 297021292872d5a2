#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "cds/sampling.hpp"

using namespace cds;

namespace {

const std::string kText = "abaacbcabdada";  // 'a' at 1,3,4,8,11,13

std::vector<std::uint32_t> u32(std::initializer_list<std::uint32_t> v) { return v; }

}  // namespace

TEST_CASE("position sampling: single pivot, k=5") {
    Corpus y = make_corpus(kText);
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    CHECK(s.n == 13);
    CHECK(s.k == 5);
    CHECK(s.residues == u32({1, 3, 4, 3, 1, 3}));
    CHECK(s.tau == u32({3, 4, 6}));
    CHECK(s.occurrence_count() == 6);
}

TEST_CASE("position sampling: two-byte pivot set includes a residue of zero") {
    Corpus y = make_corpus(kText);  // {'a','c'} occurrences at 1,3,4,5,7,8,11,13
    PositionSample s = build_position_sampling(y, PivotSet({'a', 'c'}), 5);
    CHECK(s.residues == u32({1, 3, 4, 0, 2, 3, 1, 3}));
    CHECK(s.tau == u32({4, 6, 8}));
}

TEST_CASE("position sampling: text without pivots") {
    Corpus y = make_corpus("bbbb");
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    CHECK(s.residues.empty());
    CHECK(s.tau == u32({0}));
}

TEST_CASE("position sampling rejects k = 0") {
    Corpus y = make_corpus(kText);
    CHECK_THROWS_AS(build_position_sampling(y, PivotSet::single('a'), 0), std::invalid_argument);
}

TEST_CASE("get_position recovers every occurrence, including residue zero") {
    Corpus y = make_corpus(kText);
    PositionSample s = build_position_sampling(y, PivotSet({'a', 'c'}), 5);
    const std::uint64_t want[] = {1, 3, 4, 5, 7, 8, 11, 13};
    std::uint64_t block = 1;
    for (std::uint64_t i = 1; i <= 8; ++i)
        CHECK(get_position(s, block, i) == want[i - 1]);
    // i=4 is position 5 = 1*5: residue 0 resolves to the block's right edge
    std::uint64_t fresh = 1;
    CHECK(get_position(s, fresh, 4) == 5);
    CHECK(fresh == 1);
}

TEST_CASE("get_position with sparse occurrences skips empty blocks") {
    Corpus y = make_corpus("caacbddcbcabbacdcadcab");  // 'a' at 2,3,11,14,18,21
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    CHECK(s.residues == u32({2, 3, 1, 4, 3, 1}));
    CHECK(s.tau == u32({2, 2, 4, 5, 6}));
    std::uint64_t block = 1;
    CHECK(get_position(s, block, 1) == 2);
    CHECK(get_position(s, block, 5) == 18);
    CHECK(block == 4);
    CHECK(get_position(s, block, 6) == 21);
}

TEST_CASE("get_position rejects out-of-range occurrence ranks") {
    Corpus y = make_corpus(kText);
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    std::uint64_t block = 1;
    CHECK_THROWS_AS(get_position(s, block, 0), std::out_of_range);
    CHECK_THROWS_AS(get_position(s, block, 7), std::out_of_range);
}

TEST_CASE("round-trip: get_position equals a direct scan on random texts") {
    std::mt19937_64 rng(31337);
    const unsigned sigmas[] = {2, 4, 26, 256};
    const std::uint32_t ks[] = {4, 5, 16, 256};
    for (unsigned sigma : sigmas) {
        for (std::uint32_t k : ks) {
            std::size_t n = 1 + rng() % 20000;
            std::string t = testutil::random_text(rng, n, sigma);
            PivotSet pivots = PivotSet::single(static_cast<std::uint8_t>(t[rng() % t.size()]));
            Corpus y = make_corpus(t);
            PositionSample s = build_position_sampling(y, pivots, k);
            auto want = testutil::scan_positions(t, pivots);
            REQUIRE(s.occurrence_count() == want.size());

            std::uint64_t block = 1;  // shared monotone hint
            for (std::uint64_t i = 1; i <= want.size(); ++i) {
                REQUIRE(get_position(s, block, i) == want[i - 1]);
            }
            // random access with fresh hints must agree as well
            for (int probe = 0; probe < 32 && !want.empty(); ++probe) {
                std::uint64_t i = 1 + rng() % want.size();
                std::uint64_t fresh = 1;
                REQUIRE(get_position(s, fresh, i) == want[i - 1]);
            }
        }
    }
}

TEST_CASE("round-trip holds when pivots sit exactly on block boundaries") {
    // 'a' at every multiple of k: all residues are zero.
    const std::uint32_t k = 7;
    std::string t(70, 'b');
    for (std::size_t pos = k; pos <= t.size(); pos += k) t[pos - 1] = 'a';
    Corpus y = make_corpus(t);
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), k);
    for (auto r : s.residues) CHECK(r == 0);
    std::uint64_t block = 1;
    for (std::uint64_t i = 1; i <= s.occurrence_count(); ++i)
        CHECK(get_position(s, block, i) == i * k);
}

TEST_CASE("tau invariants: non-decreasing, final entry is the occurrence count") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        std::string t = testutil::random_text(rng, 1 + rng() % 3000, 4);
        std::uint32_t k = 1 + rng() % 300;
        Corpus y = make_corpus(t);
        PositionSample s = build_position_sampling(y, PivotSet::single('a'), k);
        REQUIRE(s.tau.size() == (t.size() + k - 1) / k);
        for (std::size_t b = 1; b < s.tau.size(); ++b) REQUIRE(s.tau[b - 1] <= s.tau[b]);
        REQUIRE(s.tau.back() == s.occurrence_count());
    }
}

TEST_CASE("compute_distance_sampling on known sequences") {
    PivotSet a = PivotSet::single('a');
    Corpus y = make_corpus(kText);
    auto [d1, c1] = compute_distance_sampling(y.bytes(), a);
    CHECK(d1 == u32({2, 1, 4, 3, 2}));
    CHECK(c1 == 6);

    Corpus runs = make_corpus("aaaa");
    auto [d2, c2] = compute_distance_sampling(runs.bytes(), a);
    CHECK(d2 == u32({1, 1, 1}));
    CHECK(c2 == 4);

    Corpus none = make_corpus("bcd");
    auto [d3, c3] = compute_distance_sampling(none.bytes(), a);
    CHECK(d3.empty());
    CHECK(c3 == 0);
}

TEST_CASE("distances_from_sample equals the direct computation") {
    Corpus y = make_corpus(kText);
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    CHECK(distances_from_sample(s) == u32({2, 1, 4, 3, 2}));

    // sparse text whose gaps exceed k: reconstruction must still be exact
    Corpus y2 = make_corpus("caacbddcbcabbacdcadcab");
    PositionSample s2 = build_position_sampling(y2, PivotSet::single('a'), 5);
    CHECK(distances_from_sample(s2) == u32({1, 8, 3, 4, 3}));

    Corpus one = make_corpus("bab");
    PositionSample s3 = build_position_sampling(one, PivotSet::single('a'), 5);
    CHECK(distances_from_sample(s3).empty());

    std::mt19937_64 rng(91);
    for (int iter = 0; iter < 60; ++iter) {
        std::string t = testutil::random_text(rng, 1 + rng() % 5000, iter % 2 ? 3 : 26);
        std::uint32_t k = 2 + rng() % 255;
        PivotSet pivots = PivotSet::single('a');
        Corpus c = make_corpus(t);
        PositionSample s4 = build_position_sampling(c, pivots, k);
        REQUIRE(distances_from_sample(s4) == testutil::scan_distances(t, pivots));
    }
}

TEST_CASE("distances_fast_path: wraparound arithmetic on residues") {
    CHECK(distances_fast_path(u32({1, 3, 4, 3, 1, 3}), 5) == u32({2, 1, 4, 3, 2}));
    CHECK(distances_fast_path(u32({3, 0}), 5) == u32({2}));
    CHECK(distances_fast_path(u32({2}), 5).empty());
    CHECK(distances_fast_path({}, 5).empty());
}

TEST_CASE("fast path diverges from truth exactly when a gap reaches k") {
    Corpus y = make_corpus("caacbddcbcabbacdcadcab");
    PositionSample s = build_position_sampling(y, PivotSet::single('a'), 5);
    auto fast = distances_fast_path(s.residues, s.k);
    auto truth = distances_from_sample(s);
    CHECK(fast == u32({1, 3, 3, 4, 3}));  // the 8-gap aliases to 8 mod 5 = 3
    CHECK(truth == u32({1, 8, 3, 4, 3}));
    CHECK(fast != truth);
}

TEST_CASE("FastDistanceView matches the materialized fast path") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<std::uint32_t> residues(rng() % 200);
        std::uint32_t k = 2 + rng() % 255;
        for (auto& r : residues) r = rng() % k;
        auto mat = distances_fast_path(residues, k);
        FastDistanceView view(residues, k);
        REQUIRE(view.size() == mat.size());
        for (std::size_t i = 0; i < mat.size(); ++i) REQUIRE(view[i] == mat[i]);
    }
}

TEST_CASE("build_cds_index computes the fast-path flag from the real gaps") {
    Corpus dense = make_corpus(kText);
    CdsIndex a = build_cds_index(dense, PivotSet::single('a'), 5);
    CHECK(a.fast_path_ok);  // max gap 4 < k=5
    CHECK(a.k() == 5);
    CHECK(a.n() == 13);
    CHECK(a.occurrence_count() == 6);

    Corpus sparse = make_corpus("caacbddcbcabbacdcadcab");
    CdsIndex b = build_cds_index(sparse, PivotSet::single('a'), 5);
    CHECK_FALSE(b.fast_path_ok);  // gap 8 >= k=5

    CdsIndex c = build_cds_index(sparse, PivotSet::single('a'), 9);
    CHECK(c.fast_path_ok);  // k raised past the max gap
}

TEST_CASE("build_cds_index by rank picks the frequency table entry") {
    Corpus y = make_corpus(kText);
    CdsIndex byRank = build_cds_index(y, 1u, 5u);
    CdsIndex bySet = build_cds_index(y, PivotSet::single('a'), 5);
    CHECK(byRank == bySet);
    CHECK_THROWS_AS(build_cds_index(y, 5u, 5u), std::out_of_range);  // only 4 distinct bytes
    CHECK_THROWS_AS(build_cds_index(y, PivotSet{}, 5), std::invalid_argument);
}

TEST_CASE("sample_pattern reduces patterns to pivot terms") {
    PivotSet a = PivotSet::single('a');

    SampledPattern cab = sample_pattern(make_corpus("cab").bytes(), a);
    CHECK(cab.pivot_count == 1);
    CHECK(cab.alpha == 2);
    CHECK(cab.distances.empty());
    CHECK(cab.length == 3);

    SampledPattern bd = sample_pattern(make_corpus("bd").bytes(), a);
    CHECK(bd.pivot_count == 0);
    CHECK(bd.alpha == 0);

    SampledPattern abaa = sample_pattern(make_corpus("abaa").bytes(), a);
    CHECK(abaa.pivot_count == 3);
    CHECK(abaa.alpha == 1);
    CHECK(abaa.distances == u32({2, 1}));
}
