// cdsmatch: build, query, and benchmark sampled string-matching indexes.
//
// Subcommands:
//   index   build a .cdsi / .otsi index file from a text
//   search  find a pattern in a text through an index
//   bench   timing/counter CSV over seeded random patterns
//   stats   pivot-gap statistics of a text (rank, count, max/avg gap)
//
// Exit codes: 0 success, 1 runtime error (I/O, mismatches), 2 usage.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cds/bench.hpp"
#include "cds/corpus.hpp"
#include "cds/index_io.hpp"
#include "cds/matchers.hpp"
#include "cds/ots.hpp"
#include "cds/search.hpp"

namespace {

std::vector<std::uint8_t> parse_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex pattern");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument(std::string("bad hex digit: ") + c);
    };
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    return out;
}

cds::MatcherKind matcher_from_name(const std::string& name) {
    if (name == "horspool") return cds::MatcherKind::horspool;
    if (name == "kmp") return cds::MatcherKind::kmp;
    if (name == "naive") return cds::MatcherKind::naive;
    throw CLI::ValidationError("--matcher", "unknown matcher: " + name);
}

// Writes to --out when given, stdout otherwise.
struct OutStream {
    explicit OutStream(const std::string& path) {
        if (path.empty()) return;
        file.emplace(path, std::ios::binary);
        if (!*file) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& get() { return file ? *file : std::cout; }
    std::optional<std::ofstream> file;
};

int cmd_index(const std::string& text_path, const std::string& algo,
              std::uint32_t rank, const std::string& pivots_arg, std::uint32_t k,
              std::uint32_t removed, std::uint32_t q, const std::string& out_path) {
    cds::Corpus text = cds::load_corpus(text_path);
    auto start = std::chrono::steady_clock::now();
    cds::AnyIndex idx;
    if (algo == "cds") {
        if (!pivots_arg.empty()) {
            cds::PivotSet pivots;
            for (char c : pivots_arg) pivots.insert(static_cast<std::uint8_t>(c));
            idx = cds::build_cds_index(text, pivots, k);
        } else {
            idx = cds::build_cds_index(text, rank, k);
        }
    } else if (algo == "ots") {
        idx = cds::build_ots_index(text, removed, q);
    } else {
        throw CLI::ValidationError("--algo", "must be cds or ots");
    }
    double build_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::uint64_t bytes = 0;
    if (!out_path.empty()) bytes = cds::save_index_file(idx, out_path);
    else bytes = std::visit([](const auto& i) { return cds::saved_index_size(i); }, idx);

    if (const auto* c = std::get_if<cds::CdsIndex>(&idx)) {
        std::cout << "algo=cds n=" << c->n() << " n_c=" << c->occurrence_count()
                  << " k=" << c->k()
                  << " fast_path_ok=" << (c->fast_path_ok ? "true" : "false")
                  << " index_bytes=" << bytes << " build_ms=" << build_ms << "\n";
        if (!c->fast_path_ok)
            std::cerr << "warning: a pivot gap reaches the block size; distance "
                         "reconstruction will take the general path\n";
    } else {
        const auto& o = std::get<cds::OtsIndex>(idx);
        std::cout << "algo=ots n=" << o.n << " n_hat=" << o.sampled_length()
                  << " q=" << o.q << " index_bytes=" << bytes
                  << " build_ms=" << build_ms << "\n";
    }
    return 0;
}

int cmd_search(const std::string& index_path, const std::string& text_path,
               const std::string& pattern_arg, const std::string& pattern_hex,
               const std::string& matcher_name, bool oracle, bool inject_fault) {
    cds::Corpus text = cds::load_corpus(text_path);
    std::vector<std::uint8_t> pattern;
    if (!pattern_hex.empty()) pattern = parse_hex(pattern_hex);
    else pattern.assign(pattern_arg.begin(), pattern_arg.end());
    if (pattern.empty()) throw CLI::ValidationError("--pattern", "pattern must be non-empty");

    cds::AnyIndex idx = cds::load_index_file(index_path);
    cds::SearchOptions opts;
    opts.matcher = matcher_from_name(matcher_name);

    cds::SearchOutcome outcome = std::visit(
        [&](const auto& i) -> cds::SearchOutcome {
            if constexpr (std::is_same_v<std::decay_t<decltype(i)>, cds::CdsIndex>)
                return cds::search(pattern, i, text, opts);
            else
                return cds::ots_search(pattern, i, text);
        },
        idx);

    if (inject_fault) {
        // Deliberately corrupt the result so the --oracle path can prove
        // it detects faults (harness self-test).
        if (!outcome.matches.empty()) outcome.matches.pop_back();
        else outcome.matches.push_back(1);
    }

    if (oracle) {
        cds::MatchList expected = cds::naive_search(pattern, text.bytes());
        if (expected.positions != outcome.matches) {
            std::cerr << "oracle mismatch: index search returned " << outcome.matches.size()
                      << " matches, naive scan returned " << expected.positions.size()
                      << "\n";
            return 1;
        }
    }

    for (std::uint64_t p : outcome.matches) std::cout << p << "\n";
    std::cout << "matches=" << outcome.matches.size()
              << " verifications=" << outcome.stats.verifications
              << " inspected=" << outcome.stats.text_inspections << "\n";
    return 0;
}

int cmd_bench(const std::string& text_path, const std::vector<std::string>& algo_specs,
              const std::vector<std::uint64_t>& lengths, std::uint64_t runs,
              std::uint64_t seed, const std::string& out_path, const std::string& raw_path) {
    cds::Corpus text = cds::load_corpus(text_path);
    cds::BenchOptions opts;
    opts.algos = cds::parse_algo_specs(
        algo_specs.empty()
            ? std::vector<std::string>{"cds:rank=1,k=256", "horspool"}
            : algo_specs);
    if (!lengths.empty()) opts.pattern_lengths = lengths;
    opts.runs = runs;
    opts.seed = seed;

    std::vector<cds::BenchRecord> records = cds::run_bench(text, opts);
    OutStream out(out_path);
    cds::write_bench_csv(out.get(), records);
    if (!raw_path.empty()) {
        std::ofstream raw(raw_path, std::ios::binary);
        if (!raw) throw std::runtime_error("cannot open raw output file: " + raw_path);
        cds::write_bench_raw_csv(raw, records);
    }
    return 0;
}

int cmd_stats(const std::string& text_path, std::uint32_t max_rank, std::uint32_t k,
              const std::string& out_path) {
    cds::Corpus text = cds::load_corpus(text_path);
    std::vector<cds::PivotStats> stats = cds::distance_stats(text, max_rank);
    OutStream out(out_path);
    out.get() << "# bound_k=" << k << "\n";
    out.get() << "rank,byte,count,max_gap,avg_gap\n";
    char avg[32];
    for (const cds::PivotStats& s : stats) {
        std::snprintf(avg, sizeof avg, "%.2f", s.avg_gap);
        out.get() << s.rank << ',' << static_cast<unsigned>(s.pivot) << ',' << s.count
                  << ',' << s.max_gap << ',' << avg << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sampled exact string matching: index, search, bench, stats"};
    app.require_subcommand(1);

    // index
    auto* index = app.add_subcommand("index", "build and save an index");
    std::string idx_text, idx_algo = "cds", idx_pivots, idx_out;
    std::uint32_t idx_rank = 1, idx_k = 256, idx_removed = 13, idx_q = 32;
    index->add_option("--text", idx_text, "text file to index")->required();
    index->add_option("--algo", idx_algo, "cds or ots (default cds)");
    index->add_option("--rank", idx_rank, "pivot rank, 1 = most frequent byte");
    index->add_option("--pivots", idx_pivots, "explicit pivot bytes, e.g. 'ac' (overrides --rank)");
    index->add_option("--k", idx_k, "block size (default 256)");
    index->add_option("--removed", idx_removed, "ots: most-frequent bytes to drop (default 13)");
    index->add_option("--q", idx_q, "ots: position-anchor interval (default 32)");
    index->add_option("--out", idx_out, "output index file (.cdsi/.otsi)");

    // search
    auto* search = app.add_subcommand("search", "search a pattern through an index");
    std::string s_index, s_text, s_pattern, s_pattern_hex, s_matcher = "horspool";
    bool s_oracle = false, s_fault = false;
    search->add_option("--index", s_index, "index file")->required();
    search->add_option("--text", s_text, "the text the index was built from")->required();
    search->add_option("--pattern", s_pattern, "pattern (literal bytes)");
    search->add_option("--pattern-hex", s_pattern_hex, "pattern as hex digits");
    search->add_option("--matcher", s_matcher, "underlying matcher: horspool|kmp|naive");
    search->add_flag("--oracle", s_oracle, "cross-check the result against a naive scan");
    search->add_flag("--self-test-fault", s_fault)->group("");  // deliberate corruption, for tests

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark algorithms, CSV output");
    std::string b_text, b_out, b_raw;
    std::vector<std::string> b_algos;
    std::vector<std::uint64_t> b_lengths;
    std::uint64_t b_runs = 1000, b_seed = 42;
    bench->add_option("--text", b_text, "text file")->required();
    bench->add_option("--algos", b_algos,
                      "algorithm specs, e.g. cds:rank=1..20,k=256 ots:removed=13,q=32 horspool")
        ->expected(-1);
    bench->add_option("--lengths", b_lengths, "pattern lengths (default 2,4,...,256)")
        ->delimiter(',');
    bench->add_option("--runs", b_runs, "patterns per length (default 1000)");
    bench->add_option("--seed", b_seed, "PRNG seed for pattern extraction (default 42)");
    bench->add_option("--out", b_out, "write CSV here instead of stdout");
    bench->add_option("--raw", b_raw, "also dump per-run times to this CSV file");

    // stats
    auto* stats = app.add_subcommand("stats", "pivot gap statistics as CSV");
    std::string st_text, st_out;
    std::uint32_t st_rank = 20, st_k = 256;
    stats->add_option("--text", st_text, "text file")->required();
    stats->add_option("--max-rank", st_rank, "ranks to report (default 20)");
    stats->add_option("--k", st_k, "bound line printed as comment (default 256)");
    stats->add_option("--out", st_out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        if (*index)
            return cmd_index(idx_text, idx_algo, idx_rank, idx_pivots, idx_k,
                             idx_removed, idx_q, idx_out);
        if (*search)
            return cmd_search(s_index, s_text, s_pattern, s_pattern_hex, s_matcher,
                              s_oracle, s_fault);
        if (*bench)
            return cmd_bench(b_text, b_algos, b_lengths, b_runs, b_seed, b_out, b_raw);
        if (*stats) return cmd_stats(st_text, st_rank, st_k, st_out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message; 0 for --help
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
