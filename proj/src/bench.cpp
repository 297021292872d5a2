#include "cds/bench.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cds/index_io.hpp"
#include "cds/ots.hpp"
#include "cds/search.hpp"

namespace cds {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_ms(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// -- spec parsing ------------------------------------------------------------

std::vector<std::uint32_t> parse_values(const std::string& key, const std::string& value) {
    auto number = [&](const std::string& s) -> std::uint32_t {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || v > 0xffffffffUL)
            throw std::invalid_argument("bad value for '" + key + "': " + s);
        return static_cast<std::uint32_t>(v);
    };

    std::vector<std::uint32_t> out;
    if (auto dots = value.find(".."); dots != std::string::npos) {
        std::uint32_t lo = number(value.substr(0, dots));
        std::uint32_t hi = number(value.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty range for '" + key + "': " + value);
        for (std::uint32_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t bar = value.find('|', start);
        out.push_back(number(value.substr(start, bar - start)));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

MatcherKind parse_matcher(const std::string& name) {
    if (name == "horspool") return MatcherKind::horspool;
    if (name == "kmp") return MatcherKind::kmp;
    if (name == "naive") return MatcherKind::naive;
    throw std::invalid_argument("unknown matcher: " + name);
}

void expand_spec(const std::string& spec, std::vector<AlgoConfig>& out) {
    std::size_t colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    AlgoConfig base;
    if (family == "cds") base.family = AlgoConfig::Family::cds;
    else if (family == "ots") base.family = AlgoConfig::Family::ots;
    else if (family == "horspool") base.family = AlgoConfig::Family::horspool;
    else if (family == "kmp") base.family = AlgoConfig::Family::kmp;
    else if (family == "naive") base.family = AlgoConfig::Family::naive;
    else throw std::invalid_argument("unknown algorithm: " + family);

    bool plain = base.family != AlgoConfig::Family::cds &&
                 base.family != AlgoConfig::Family::ots;
    if (plain && !rest.empty())
        throw std::invalid_argument(family + " takes no parameters: " + spec);

    // Collect key -> value list, then multiply the lists out in a fixed
    // key order so row order is predictable.
    std::vector<std::uint32_t> ranks{base.rank}, ks{base.k};
    std::vector<std::uint32_t> removeds{base.removed}, qs{base.q};
    std::vector<MatcherKind> matchers{base.matcher};

    std::size_t start = 0;
    while (start < rest.size()) {
        std::size_t comma = rest.find(',', start);
        std::string item = rest.substr(start, comma - start);
        start = comma == std::string::npos ? rest.size() : comma + 1;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected key=value in spec: " + item);
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);

        bool is_cds = base.family == AlgoConfig::Family::cds;
        if (is_cds && key == "rank") ranks = parse_values(key, value);
        else if (is_cds && key == "k") ks = parse_values(key, value);
        else if (is_cds && key == "matcher") {
            matchers.clear();
            std::size_t s = 0;
            while (true) {
                std::size_t bar = value.find('|', s);
                matchers.push_back(parse_matcher(value.substr(s, bar - s)));
                if (bar == std::string::npos) break;
                s = bar + 1;
            }
        }
        else if (!is_cds && key == "removed") removeds = parse_values(key, value);
        else if (!is_cds && key == "q") qs = parse_values(key, value);
        else throw std::invalid_argument("unknown key '" + key + "' for " + family);
    }

    if (plain) {
        out.push_back(base);
    } else if (base.family == AlgoConfig::Family::cds) {
        for (std::uint32_t r : ranks)
            for (std::uint32_t k : ks)
                for (MatcherKind mk : matchers) {
                    AlgoConfig c = base;
                    c.rank = r, c.k = k, c.matcher = mk;
                    out.push_back(c);
                }
    } else {
        for (std::uint32_t r : removeds)
            for (std::uint32_t q : qs) {
                AlgoConfig c = base;
                c.removed = r, c.q = q;
                out.push_back(c);
            }
    }
}

const char* matcher_name(MatcherKind k) {
    switch (k) {
        case MatcherKind::horspool: return "horspool";
        case MatcherKind::kmp: return "kmp";
        case MatcherKind::naive: return "naive";
    }
    return "?";
}

}  // namespace

std::string AlgoConfig::algo_name() const {
    switch (family) {
        case Family::cds: return "cds";
        case Family::ots: return "ots";
        case Family::horspool: return "horspool";
        case Family::kmp: return "kmp";
        case Family::naive: return "naive";
    }
    return "?";
}

std::string AlgoConfig::params_label() const {
    switch (family) {
        case Family::cds:
            return "rank=" + std::to_string(rank) + ";k=" + std::to_string(k) +
                   ";matcher=" + matcher_name(matcher);
        case Family::ots:
            return "removed=" + std::to_string(removed) + ";q=" + std::to_string(q);
        default:
            return "-";
    }
}

std::vector<AlgoConfig> parse_algo_specs(const std::vector<std::string>& specs) {
    std::vector<AlgoConfig> out;
    for (const std::string& spec : specs)
        if (!spec.empty()) expand_spec(spec, out);
    if (out.empty()) throw std::invalid_argument("no algorithms selected");
    return out;
}

std::vector<BenchRecord> run_bench(const Corpus& text, const BenchOptions& opts) {
    const std::uint64_t n = text.size();
    if (opts.algos.empty()) throw std::invalid_argument("no algorithms selected");
    if (opts.runs == 0) throw std::invalid_argument("runs must be >= 1");
    for (std::uint64_t m : opts.pattern_lengths)
        if (m == 0 || m > n)
            throw std::invalid_argument("pattern length " + std::to_string(m) +
                                        " out of range for text of length " +
                                        std::to_string(n));

    // The pattern set is fully determined by (seed, lengths, runs): one
    // engine, offsets drawn length-group by length-group.
    std::mt19937_64 engine(opts.seed);
    std::map<std::uint64_t, std::vector<std::uint64_t>> offsets;  // m -> 0-based
    for (std::uint64_t m : opts.pattern_lengths) {
        std::uniform_int_distribution<std::uint64_t> dist(1, n - m + 1);
        auto& group = offsets[m];
        group.reserve(opts.runs);
        for (std::uint64_t i = 0; i < opts.runs; ++i) group.push_back(dist(engine) - 1);
    }

    // Index builds are timed once per configuration, up front.
    struct Prepared {
        CdsIndex cds;
        OtsIndex ots;
        double pre_ms = 0.0;
        std::uint64_t index_bytes = 0;
    };
    std::vector<Prepared> prepared(opts.algos.size());
    for (std::size_t a = 0; a < opts.algos.size(); ++a) {
        const AlgoConfig& cfg = opts.algos[a];
        Prepared& p = prepared[a];
        auto start = Clock::now();
        if (cfg.family == AlgoConfig::Family::cds) {
            p.cds = build_cds_index(text, cfg.rank, cfg.k);
            p.pre_ms = ms_since(start);
            p.index_bytes = saved_index_size(p.cds);
        } else if (cfg.family == AlgoConfig::Family::ots) {
            p.ots = build_ots_index(text, cfg.removed, cfg.q);
            p.pre_ms = ms_since(start);
            p.index_bytes = saved_index_size(p.ots);
        }
    }

    std::vector<BenchRecord> records;
    ByteView bytes = text.bytes();
    for (std::uint64_t m : opts.pattern_lengths) {
        const auto& group = offsets[m];
        std::vector<std::uint64_t> reference_occ;  // per run, first config
        for (std::size_t a = 0; a < opts.algos.size(); ++a) {
            const AlgoConfig& cfg = opts.algos[a];
            BenchRecord rec;
            rec.algo = cfg.algo_name();
            rec.params = cfg.params_label();
            rec.m = m;
            rec.runs = opts.runs;
            rec.pre_ms = prepared[a].pre_ms;
            rec.index_bytes = prepared[a].index_bytes;
            rec.raw_search_ms.reserve(opts.runs);

            auto run_one = [&](ByteView pattern, BenchRecord& acc) {
                std::uint64_t occ = 0;
                switch (cfg.family) {
                    case AlgoConfig::Family::cds: {
                        SearchOutcome o = search(pattern, prepared[a].cds, text,
                                                 {.matcher = cfg.matcher});
                        occ = o.matches.size();
                        acc.verifications += o.stats.verifications;
                        acc.inspected += o.stats.text_inspections;
                        break;
                    }
                    case AlgoConfig::Family::ots: {
                        SearchOutcome o = ots_search(pattern, prepared[a].ots, text);
                        occ = o.matches.size();
                        acc.verifications += o.stats.verifications;
                        acc.inspected += o.stats.text_inspections;
                        break;
                    }
                    case AlgoConfig::Family::horspool:
                    case AlgoConfig::Family::kmp:
                    case AlgoConfig::Family::naive: {
                        MatcherKind mk = cfg.family == AlgoConfig::Family::horspool
                                             ? MatcherKind::horspool
                                             : cfg.family == AlgoConfig::Family::kmp
                                                   ? MatcherKind::kmp
                                                   : MatcherKind::naive;
                        MatchList ml = run_matcher(mk, pattern, bytes);
                        occ = ml.positions.size();
                        acc.inspected += ml.inspections;
                        break;
                    }
                }
                return occ;
            };

            // Untimed warmup pass over the whole pattern set; its counter
            // updates land in a discarded record.
            BenchRecord warmup;
            for (std::uint64_t off : group) run_one(bytes.subspan(off, m), warmup);

            for (std::uint64_t i = 0; i < opts.runs; ++i) {
                ByteView pattern = bytes.subspan(group[i], m);
                auto start = Clock::now();
                std::uint64_t occ = run_one(pattern, rec);
                rec.raw_search_ms.push_back(ms_since(start));
                rec.occurrences += occ;
                if (a == 0) {
                    reference_occ.push_back(occ);
                } else if (reference_occ[i] != occ) {
                    throw std::runtime_error(
                        "occurrence mismatch: " + rec.algo + "[" + rec.params +
                        "] found " + std::to_string(occ) + " for pattern at offset " +
                        std::to_string(group[i]) + " (m=" + std::to_string(m) +
                        "), expected " + std::to_string(reference_occ[i]));
                }
            }
            double total = 0;
            for (double t : rec.raw_search_ms) total += t;
            rec.search_ms = total / static_cast<double>(opts.runs);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "algo,params,m,runs,pre_ms,search_ms,index_bytes,occ,verifications,inspected\n";
    for (const BenchRecord& r : records) {
        out << r.algo << ',' << r.params << ',' << r.m << ',' << r.runs << ','
            << format_ms(r.pre_ms) << ',' << format_ms(r.search_ms) << ','
            << r.index_bytes << ',' << r.occurrences << ',' << r.verifications
            << ',' << r.inspected << '\n';
    }
}

void write_bench_raw_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "algo,params,m,run,search_ms\n";
    for (const BenchRecord& r : records)
        for (std::size_t i = 0; i < r.raw_search_ms.size(); ++i)
            out << r.algo << ',' << r.params << ',' << r.m << ',' << i + 1 << ','
                << format_ms(r.raw_search_ms[i]) << '\n';
}

}  // namespace cds
