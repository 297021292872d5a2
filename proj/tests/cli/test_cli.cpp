// End-to-end tests of the cdsmatch command-line tool: every subcommand is
// run as a real subprocess and judged on exit code, stdout, and stderr.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#ifndef CDSMATCH_CLI_PATH
#error "CDSMATCH_CLI_PATH must point at the cdsmatch binary"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp", err_path = "cli_stderr.tmp";
    std::string cmd = std::string(CDSMATCH_CLI_PATH) + " " + args + " >" + out_path +
                      " 2>" + err_path;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

struct Fixture {
    Fixture() {
        write_file("ex_dense.txt", "abaacbcabdada");
        write_file("ex_sparse.txt", "caacbddcbcabbacdcadcab");
        write_file("ex_ots.txt", "abaacabdaacabcc");
    }
    ~Fixture() {
        for (const char* f : {"ex_dense.txt", "ex_sparse.txt", "ex_ots.txt",
                              "dense.cdsi", "sparse.cdsi", "ots.otsi", "junk.cdsi"})
            std::remove(f);
    }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
    Fixture fx;
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("index").code == 2);  // --text is required
    CHECK(run("search --index x.cdsi").code == 2);
    CHECK(run("index --text ex_dense.txt --algo bogus").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("index reports its parameters and writes the file") {
    Fixture fx;
    RunResult r = run("index --text ex_dense.txt --rank 1 --k 5 --out dense.cdsi");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "algo=cds n=13 n_c=6 k=5 fast_path_ok=true index_bytes=47"));
    CHECK(contains(r.out, "build_ms="));
    CHECK(r.err.empty());

    std::ifstream idx("dense.cdsi", std::ios::binary | std::ios::ate);
    REQUIRE(idx.good());
    CHECK(idx.tellg() == 47);
}

TEST_CASE("index warns when a gap defeats the fast path") {
    Fixture fx;
    RunResult r = run("index --text ex_sparse.txt --rank 1 --k 5 --out sparse.cdsi");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "fast_path_ok=false"));
    CHECK(contains(r.err, "warning"));
}

TEST_CASE("explicit pivot bytes override the rank") {
    Fixture fx;
    RunResult r = run("index --text ex_dense.txt --pivots ac --k 5");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "n_c=8"));  // 'a' and 'c' together occur 8 times
}

TEST_CASE("search prints 1-based positions then a summary line") {
    Fixture fx;
    REQUIRE(run("index --text ex_dense.txt --rank 1 --k 5 --out dense.cdsi").code == 0);

    RunResult cab = run("search --index dense.cdsi --text ex_dense.txt --pattern cab --oracle");
    CHECK(cab.code == 0);
    auto lines = lines_of(cab.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "7");
    CHECK(contains(lines[1], "matches=1"));
    CHECK(contains(lines[1], "verifications="));
    CHECK(contains(lines[1], "inspected="));

    RunResult da = run("search --index dense.cdsi --text ex_dense.txt --pattern da --oracle");
    CHECK(da.code == 0);
    auto da_lines = lines_of(da.out);
    REQUIRE(da_lines.size() == 3);
    CHECK(da_lines[0] == "10");
    CHECK(da_lines[1] == "12");

    RunResult none = run("search --index dense.cdsi --text ex_dense.txt --pattern zzz --oracle");
    CHECK(none.code == 0);
    CHECK(contains(none.out, "matches=0"));

    RunResult hex = run("search --index dense.cdsi --text ex_dense.txt --pattern-hex 616261 --oracle");
    CHECK(hex.code == 0);
    CHECK(lines_of(hex.out)[0] == "1");

    for (const char* matcher : {"horspool", "kmp", "naive"}) {
        RunResult m = run(std::string("search --index dense.cdsi --text ex_dense.txt ") +
                          "--pattern abaa --matcher " + matcher + " --oracle");
        CHECK(m.code == 0);
        CHECK(lines_of(m.out)[0] == "1");
    }
}

TEST_CASE("search through an ots index") {
    Fixture fx;
    RunResult built = run("index --text ex_ots.txt --algo ots --removed 1 --q 2 --out ots.otsi");
    CHECK(built.code == 0);
    CHECK(contains(built.out, "algo=ots n=15 n_hat=8 q=2 index_bytes=100"));

    RunResult r = run("search --index ots.otsi --text ex_ots.txt --pattern acab --oracle");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "4");
    CHECK(lines[1] == "10");
}

TEST_CASE("runtime failures exit with 1") {
    Fixture fx;
    REQUIRE(run("index --text ex_dense.txt --rank 1 --k 5 --out dense.cdsi").code == 0);

    CHECK(run("index --text no_such_text.txt").code == 1);
    CHECK(run("search --index missing.cdsi --text ex_dense.txt --pattern a").code == 1);

    // an index queried against a different text is refused
    RunResult wrong = run("search --index dense.cdsi --text ex_sparse.txt --pattern a");
    CHECK(wrong.code == 1);
    CHECK(contains(wrong.err, "error"));

    write_file("junk.cdsi", "CDSIgarbagegarbagegarbage");
    RunResult junk = run("search --index junk.cdsi --text ex_dense.txt --pattern a");
    CHECK(junk.code == 1);
    CHECK(contains(junk.err, "offset"));
}

TEST_CASE("domain errors in arguments exit with 2") {
    Fixture fx;
    REQUIRE(run("index --text ex_dense.txt --rank 1 --k 5 --out dense.cdsi").code == 0);
    CHECK(run("index --text ex_dense.txt --rank 300").code == 2);   // only 4 distinct bytes
    CHECK(run("index --text ex_dense.txt --k 0").code == 2);
    CHECK(run("search --index dense.cdsi --text ex_dense.txt --pattern-hex 61626").code == 2);
    CHECK(run("search --index dense.cdsi --text ex_dense.txt --pattern ''").code == 2);
    CHECK(run("search --index dense.cdsi --text ex_dense.txt --pattern a --matcher wat").code == 2);
}

TEST_CASE("the oracle flag catches an injected fault") {
    Fixture fx;
    REQUIRE(run("index --text ex_dense.txt --rank 1 --k 5 --out dense.cdsi").code == 0);

    RunResult clean = run("search --index dense.cdsi --text ex_dense.txt --pattern cab "
                          "--self-test-fault");
    CHECK(clean.code == 0);  // without --oracle the corruption goes unnoticed
    CHECK(contains(clean.out, "matches=0"));

    RunResult caught = run("search --index dense.cdsi --text ex_dense.txt --pattern cab "
                           "--self-test-fault --oracle");
    CHECK(caught.code == 1);
    CHECK(contains(caught.err, "oracle mismatch"));
}

TEST_CASE("stats emits the gap table as CSV") {
    Fixture fx;
    RunResult r = run("stats --text ex_dense.txt --k 5");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "# bound_k=5");
    CHECK(lines[1] == "rank,byte,count,max_gap,avg_gap");
    CHECK(lines[2] == "1,97,6,4,2.40");
    CHECK(lines[3] == "2,98,3,4,3.50");
    CHECK(lines[4] == "3,99,2,2,2.00");
    CHECK(lines[5] == "4,100,2,2,2.00");

    RunResult limited = run("stats --text ex_dense.txt --max-rank 2");
    CHECK(lines_of(limited.out).size() == 4);
}

TEST_CASE("bench emits consistent CSV and is reproducible per seed") {
    Fixture fx;
    // a text long enough for the default-free lengths asked below
    std::string text;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 4000; ++i) text.push_back("abcd"[rng() % 4]);
    write_file("bench_text.tmp", text);

    const std::string cmd =
        "bench --text bench_text.tmp --algos cds:rank=1,k=16 horspool naive "
        "--lengths 2,4 --runs 5 --seed 3";
    RunResult a = run(cmd);
    CHECK(a.code == 0);
    auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 1 + 3 * 2);
    CHECK(lines[0] == "algo,params,m,runs,pre_ms,search_ms,index_bytes,occ,verifications,inspected");

    // same seed, same counters (time columns excluded)
    RunResult b = run(cmd);
    auto strip_times = [](const std::string& csv) {
        std::string out;
        for (const auto& line : lines_of(csv)) {
            std::istringstream in(line);
            std::string f;
            int i = 0;
            while (std::getline(in, f, ',')) {
                if (i != 4 && i != 5) out += f + "|";  // drop pre_ms and search_ms
                ++i;
            }
            out += "\n";
        }
        return out;
    };
    CHECK(strip_times(a.out) == strip_times(b.out));

    // occurrence totals agree across the three algorithms for each length
    for (std::size_t group = 0; group < 2; ++group) {
        std::vector<std::string> occ;
        for (std::size_t i = 0; i < 3; ++i) {
            std::istringstream in(lines[1 + group * 3 + i]);
            std::string f;
            std::vector<std::string> fields;
            while (std::getline(in, f, ',')) fields.push_back(f);
            REQUIRE(fields.size() == 10);
            occ.push_back(fields[7]);
        }
        CHECK(occ[0] == occ[1]);
        CHECK(occ[1] == occ[2]);
    }

    CHECK(run("bench --text bench_text.tmp --lengths 100000 --runs 2").code == 2);
    std::remove("bench_text.tmp");
}
