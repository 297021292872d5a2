#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cds/bench.hpp"
#include "cds/corpus.hpp"
#include "cds/index_io.hpp"
#include "cds/matchers.hpp"
#include "cds/ots.hpp"
#include "cds/search.hpp"

namespace py = pybind11;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

cds::PivotSet pivots_from_bytes(const py::bytes& b) {
    cds::PivotSet p;
    for (std::uint8_t c : to_bytes(b)) p.insert(c);
    return p;
}

cds::MatcherKind matcher_from_name(const std::string& name) {
    if (name == "horspool") return cds::MatcherKind::horspool;
    if (name == "kmp") return cds::MatcherKind::kmp;
    if (name == "naive") return cds::MatcherKind::naive;
    throw py::value_error("unknown matcher: " + name);
}

py::list positions_list(const std::vector<std::uint64_t>& v) {
    py::list out;
    for (std::uint64_t p : v) out.append(p);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sampled exact string matching (character-distance index + OTS baseline)";

    py::class_<cds::Corpus>(m, "Corpus")
        .def(py::init([](const py::bytes& data, const std::string& label) {
                 return cds::Corpus(to_bytes(data), label);
             }),
             py::arg("data"), py::arg("label") = "<memory>")
        .def_property_readonly("size", &cds::Corpus::size)
        .def_property_readonly("source", &cds::Corpus::source)
        .def_property_readonly("data",
                               [](const cds::Corpus& c) {
                                   cds::ByteView b = c.bytes();
                                   return py::bytes(reinterpret_cast<const char*>(b.data()),
                                                    b.size());
                               })
        .def("__len__", &cds::Corpus::size);

    m.def("load_corpus", &cds::load_corpus, py::arg("path"),
          "read a file as an opaque byte corpus");

    m.def(
        "rank_characters",
        [](const cds::Corpus& c) {
            cds::FrequencyRanking r = cds::rank_characters(c);
            py::list out;
            for (std::uint8_t b : r.order)
                out.append(py::make_tuple(b, r.counts[b]));
            return out;
        },
        py::arg("corpus"), "byte frequencies as [(byte, count), ...], rank order");

    py::class_<cds::PivotStats>(m, "PivotStats")
        .def_readonly("pivot", &cds::PivotStats::pivot)
        .def_readonly("rank", &cds::PivotStats::rank)
        .def_readonly("count", &cds::PivotStats::count)
        .def_readonly("max_gap", &cds::PivotStats::max_gap)
        .def_readonly("avg_gap", &cds::PivotStats::avg_gap);

    m.def("distance_stats", &cds::distance_stats, py::arg("corpus"), py::arg("max_rank"),
          "occurrence-gap summary of the most frequent bytes");

    py::class_<cds::CdsIndex>(m, "CdsIndex")
        .def_property_readonly("k", &cds::CdsIndex::k)
        .def_property_readonly("n", &cds::CdsIndex::n)
        .def_property_readonly("occurrence_count", &cds::CdsIndex::occurrence_count)
        .def_readonly("fast_path_ok", &cds::CdsIndex::fast_path_ok)
        .def_property_readonly("pivots",
                               [](const cds::CdsIndex& i) {
                                   const auto& mem = i.pivots.members();
                                   return py::bytes(
                                       reinterpret_cast<const char*>(mem.data()), mem.size());
                               })
        .def_property_readonly(
            "residues", [](const cds::CdsIndex& i) { return i.sample.residues; })
        .def_property_readonly("tau",
                               [](const cds::CdsIndex& i) { return i.sample.tau; });

    m.def(
        "build_cds_index",
        [](const cds::Corpus& y, std::uint32_t rank, std::uint32_t k) {
            return cds::build_cds_index(y, rank, k);
        },
        py::arg("corpus"), py::arg("rank") = 1, py::arg("k") = 256,
        "index on the rank-th most frequent byte");
    m.def(
        "build_cds_index_pivots",
        [](const cds::Corpus& y, const py::bytes& pivots, std::uint32_t k) {
            return cds::build_cds_index(y, pivots_from_bytes(pivots), k);
        },
        py::arg("corpus"), py::arg("pivots"), py::arg("k") = 256,
        "index on an explicit pivot byte set");

    py::class_<cds::SearchOutcome>(m, "SearchOutcome")
        .def_property_readonly(
            "matches", [](const cds::SearchOutcome& o) { return positions_list(o.matches); })
        .def_property_readonly(
            "verifications",
            [](const cds::SearchOutcome& o) { return o.stats.verifications; })
        .def_property_readonly(
            "text_inspections",
            [](const cds::SearchOutcome& o) { return o.stats.text_inspections; })
        .def_property_readonly(
            "sampled_inspections",
            [](const cds::SearchOutcome& o) { return o.stats.sampled_inspections; })
        .def_property_readonly(
            "candidates", [](const cds::SearchOutcome& o) { return o.stats.candidates; });

    m.def(
        "search",
        [](const py::bytes& pattern, const cds::CdsIndex& idx, const cds::Corpus& y,
           const std::string& matcher) {
            std::vector<std::uint8_t> pat = to_bytes(pattern);
            cds::SearchOptions opts;
            opts.matcher = matcher_from_name(matcher);
            return cds::search(pat, idx, y, opts);
        },
        py::arg("pattern"), py::arg("index"), py::arg("corpus"),
        py::arg("matcher") = "horspool",
        "all 1-based occurrences of pattern, dispatched on its pivot count");

    m.def(
        "compute_distance_sampling",
        [](const py::bytes& data, const py::bytes& pivots) {
            std::vector<std::uint8_t> bytes = to_bytes(data);
            auto [distances, count] =
                cds::compute_distance_sampling(bytes, pivots_from_bytes(pivots));
            return py::make_tuple(distances, count);
        },
        py::arg("data"), py::arg("pivots"),
        "(distances between consecutive pivot occurrences, occurrence count)");

    m.def(
        "distances_from_sample",
        [](const cds::CdsIndex& idx) { return cds::distances_from_sample(idx.sample); },
        py::arg("index"), "reconstruct the distance sequence through tau");
    m.def(
        "distances_fast_path",
        [](const std::vector<std::uint32_t>& residues, std::uint32_t k) {
            return cds::distances_fast_path(residues, k);
        },
        py::arg("residues"), py::arg("k"),
        "residue-only reconstruction; valid only when every gap < k");

    py::class_<cds::OtsIndex>(m, "OtsIndex")
        .def_readonly("q", &cds::OtsIndex::q)
        .def_readonly("n", &cds::OtsIndex::n)
        .def_property_readonly("sampled_length", &cds::OtsIndex::sampled_length)
        .def_property_readonly("sampled_text",
                               [](const cds::OtsIndex& i) {
                                   return py::bytes(
                                       reinterpret_cast<const char*>(i.sampled_text.data()),
                                       i.sampled_text.size());
                               })
        .def_readonly("rho", &cds::OtsIndex::rho);

    m.def("build_ots_index", &cds::build_ots_index, py::arg("corpus"),
          py::arg("removed_count"), py::arg("q"),
          "occurrence-text-sampling baseline index");
    m.def(
        "ots_search",
        [](const py::bytes& pattern, const cds::OtsIndex& idx, const cds::Corpus& y) {
            std::vector<std::uint8_t> pat = to_bytes(pattern);
            return cds::ots_search(pat, idx, y);
        },
        py::arg("pattern"), py::arg("index"), py::arg("corpus"));

    m.def(
        "save_index",
        [](const std::variant<cds::CdsIndex, cds::OtsIndex>& idx, const std::string& path) {
            return cds::save_index_file(idx, path);
        },
        py::arg("index"), py::arg("path"), "returns bytes written");
    m.def(
        "load_index",
        [](const std::string& path) -> py::object {
            cds::AnyIndex idx = cds::load_index_file(path);
            if (auto* c = std::get_if<cds::CdsIndex>(&idx)) return py::cast(std::move(*c));
            return py::cast(std::move(std::get<cds::OtsIndex>(idx)));
        },
        py::arg("path"));

    auto match_fn = [](cds::MatchList (*fn)(const std::vector<std::uint8_t>&,
                                            const std::vector<std::uint8_t>&)) {
        return [fn](const py::bytes& pat, const py::bytes& txt) {
            return positions_list(fn(to_bytes(pat), to_bytes(txt)).positions);
        };
    };
    m.def("horspool_search",
          match_fn(&cds::horspool_search<std::vector<std::uint8_t>,
                                         std::vector<std::uint8_t>>),
          py::arg("pattern"), py::arg("text"), "1-based occurrences");
    m.def("kmp_search",
          match_fn(&cds::kmp_search<std::vector<std::uint8_t>, std::vector<std::uint8_t>>),
          py::arg("pattern"), py::arg("text"), "1-based occurrences");
    m.def("naive_search",
          match_fn(&cds::naive_search<std::vector<std::uint8_t>, std::vector<std::uint8_t>>),
          py::arg("pattern"), py::arg("text"),
          "1-based occurrences by exhaustive check (the oracle)");

    py::register_exception<cds::TextMismatchError>(m, "TextMismatchError",
                                                   PyExc_RuntimeError);
    py::register_exception<cds::FormatError>(m, "FormatError", PyExc_ValueError);
}
