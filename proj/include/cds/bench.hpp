#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/matchers.hpp"

namespace cds {

// One benchmarkable algorithm configuration.
struct AlgoConfig {
    enum class Family { cds, ots, horspool, kmp, naive };

    Family family = Family::cds;
    std::uint32_t rank = 1;     // cds: pivot rank
    std::uint32_t k = 256;      // cds: block size
    std::uint32_t removed = 13; // ots: most-frequent bytes dropped
    std::uint32_t q = 32;       // ots: rho anchor interval
    MatcherKind matcher = MatcherKind::horspool;  // cds underlying matcher

    std::string algo_name() const;
    // Parameter summary for the CSV `params` column; ';'-separated so the
    // CSV stays naively splittable on commas ("-" for the plain matchers).
    std::string params_label() const;
};

// Expands a space-separated algorithm spec list, e.g.
//   "cds:rank=1..20,k=256 ots:removed=2..20,q=8|16|32 horspool"
// Each item is FAMILY[:key=value,...]; a value is a single integer, an
// inclusive range `a..b`, or a `|`-separated list, and list-valued keys
// multiply out into one configuration per combination.  Keys: rank, k,
// matcher (cds); removed, q (ots); none for horspool/kmp/naive.
// Throws std::invalid_argument on malformed specs.
std::vector<AlgoConfig> parse_algo_specs(const std::vector<std::string>& specs);

struct BenchOptions {
    std::vector<AlgoConfig> algos;
    std::vector<std::uint64_t> pattern_lengths = {2, 4, 8, 16, 32, 64, 128, 256};
    std::uint64_t runs = 1000;
    std::uint64_t seed = 42;
};

// One CSV row: an algorithm configuration against one pattern length.
// occurrences/verifications/inspected are totals over all runs; times are
// per-run means in milliseconds (steady-clock).
struct BenchRecord {
    std::string algo;
    std::string params;
    std::uint64_t m = 0;
    std::uint64_t runs = 0;
    double pre_ms = 0.0;
    double search_ms = 0.0;
    std::uint64_t index_bytes = 0;
    std::uint64_t occurrences = 0;
    std::uint64_t verifications = 0;
    std::uint64_t inspected = 0;  // text characters inspected
    std::vector<double> raw_search_ms;
};

// Reproduces the measurement protocol: `runs` patterns per length are
// extracted from the text at uniform random offsets (seeded PRNG, so a
// seed fixes the pattern set), every configuration searches the same
// patterns after one untimed warmup pass, and the per-run occurrence
// counts must agree across configurations (std::runtime_error otherwise
// — the algorithms are exact, so a mismatch is a bug, and the harness is
// its own first test).  Throws std::invalid_argument when a pattern
// length exceeds the text.
std::vector<BenchRecord> run_bench(const Corpus& text, const BenchOptions& opts);

// Header `algo,params,m,runs,pre_ms,search_ms,index_bytes,occ,verifications,inspected`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Per-run times: header `algo,params,m,run,search_ms`.
void write_bench_raw_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace cds
