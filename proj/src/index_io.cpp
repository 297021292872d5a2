#include "cds/index_io.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <vector>

namespace cds {
namespace {

constexpr std::uint8_t kVersion = 1;

// -- writing ---------------------------------------------------------------

struct Writer {
    std::ostream& out;
    std::uint64_t written = 0;

    void bytes(const void* p, std::size_t len) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
        if (!out) throw std::ios_base::failure("index write failed");
        written += len;
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) {
        std::uint8_t b[4] = {static_cast<std::uint8_t>(v),
                             static_cast<std::uint8_t>(v >> 8),
                             static_cast<std::uint8_t>(v >> 16),
                             static_cast<std::uint8_t>(v >> 24)};
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v));
        u32(static_cast<std::uint32_t>(v >> 32));
    }
};

void check_savable_u32(std::uint64_t v, const char* what) {
    if (v > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument(std::string(what) + " exceeds the 32-bit format limit");
}

// -- reading ---------------------------------------------------------------

// The whole file is pulled into memory first: index files are small by
// design, and parsing a byte vector gives exact offsets for errors and a
// free trailing-garbage check.
struct Reader {
    std::vector<std::uint8_t> data;
    std::uint64_t pos = 0;

    explicit Reader(std::istream& in)
        : data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()) {}

    void need(std::uint64_t count, const char* what) {
        if (pos + count > data.size())
            throw FormatError(std::string("unexpected end of file reading ") + what, pos);
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return data[pos++];
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = static_cast<std::uint32_t>(data[pos]) |
                          static_cast<std::uint32_t>(data[pos + 1]) << 8 |
                          static_cast<std::uint32_t>(data[pos + 2]) << 16 |
                          static_cast<std::uint32_t>(data[pos + 3]) << 24;
        pos += 4;
        return v;
    }
    std::uint64_t u64(const char* what) {
        std::uint64_t lo = u32(what), hi = u32(what);
        return lo | hi << 32;
    }
};

void expect(bool cond, const char* what, std::uint64_t offset) {
    if (!cond) throw FormatError(what, offset);
}

}  // namespace

std::uint64_t saved_index_size(const CdsIndex& idx) {
    return 28 + idx.pivots.size() + idx.occurrence_count() +
           4 * ((idx.n() + idx.k() - 1) / idx.k());
}

std::uint64_t saved_index_size(const OtsIndex& idx) {
    return 28 + 32 + idx.sampled_length() + 8 * (idx.sampled_length() / idx.q);
}

std::uint64_t save_index(const CdsIndex& idx, std::ostream& sink) {
    if (idx.k() > 256)
        throw std::invalid_argument("k > 256 does not fit one-byte residue entries");
    if (idx.pivots.empty() || idx.pivots.size() > 255)
        throw std::invalid_argument("pivot-set size must be in 1..255");
    check_savable_u32(idx.n(), "text length");
    check_savable_u32(idx.occurrence_count(), "occurrence count");

    Writer w{sink};
    w.bytes("CDSI", 4);
    w.u8(kVersion);
    w.u8(0);
    w.u32(idx.k());
    w.u32(static_cast<std::uint32_t>(idx.n()));
    w.u32(static_cast<std::uint32_t>(idx.occurrence_count()));
    w.u8(static_cast<std::uint8_t>(idx.pivots.size()));
    for (std::uint8_t b : idx.pivots.members()) w.u8(b);
    w.u64(idx.source.hash);
    w.u8(idx.fast_path_ok ? 1 : 0);
    // Residues are < k <= 256, so each fits one byte; 0 is a legal value
    // (positions sitting exactly on a block boundary).
    for (std::uint32_t r : idx.sample.residues)
        w.u8(static_cast<std::uint8_t>(r));
    for (std::uint32_t t : idx.sample.tau) w.u32(t);
    sink.flush();
    return w.written;
}

std::uint64_t save_index(const OtsIndex& idx, std::ostream& sink) {
    check_savable_u32(idx.n, "text length");
    check_savable_u32(idx.sampled_length(), "sampled length");

    Writer w{sink};
    w.bytes("OTSI", 4);
    w.u8(kVersion);
    w.u8(0);
    w.u32(idx.q);
    w.u32(static_cast<std::uint32_t>(idx.n));
    w.u32(static_cast<std::uint32_t>(idx.sampled_length()));
    w.u8(32);  // alphabet bitmap length
    for (unsigned j = 0; j < 32; ++j) {
        std::uint8_t byte = 0;
        for (unsigned i = 0; i < 8; ++i)
            if (idx.sampled_alphabet.test(8 * j + i)) byte |= 1u << i;
        w.u8(byte);
    }
    w.u64(idx.source.hash);
    w.u8(0);  // flags
    for (std::uint8_t b : idx.sampled_text) w.u8(b);
    for (std::uint64_t p : idx.rho) w.u64(p);
    sink.flush();
    return w.written;
}

std::uint64_t save_index_file(const AnyIndex& idx, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    return std::visit([&](const auto& i) { return save_index(i, out); }, idx);
}

namespace {

CdsIndex load_cds(Reader& r) {
    CdsIndex idx;
    std::uint64_t at = r.pos;
    expect(r.u8("version") == kVersion, "unsupported version", at);
    at = r.pos;
    expect(r.u8("reserved") == 0, "reserved byte must be zero", at);
    std::uint32_t k = r.u32("k");
    expect(k >= 1 && k <= 256, "block size k out of range", r.pos - 4);
    std::uint32_t n = r.u32("n");
    std::uint32_t n_c = r.u32("n_c");
    at = r.pos;
    std::uint8_t pivot_count = r.u8("pivot-set size");
    expect(pivot_count >= 1, "pivot set must be non-empty", at);
    PivotSet pivots;
    for (unsigned i = 0; i < pivot_count; ++i) {
        at = r.pos;
        std::uint8_t b = r.u8("pivot byte");
        expect(!pivots.contains(b), "duplicate pivot byte", at);
        pivots.insert(b);
    }
    std::uint64_t hash = r.u64("fingerprint");
    at = r.pos;
    std::uint8_t flags = r.u8("flags");
    expect((flags & ~1u) == 0, "unknown flag bits set", at);

    idx.pivots = pivots;
    idx.fast_path_ok = (flags & 1) != 0;
    idx.source = {hash, n};
    idx.sample.k = k;
    idx.sample.n = n;
    idx.sample.residues.reserve(n_c);
    for (std::uint32_t i = 0; i < n_c; ++i) {
        at = r.pos;
        std::uint8_t res = r.u8("residue");
        expect(res < k, "residue not below k", at);
        idx.sample.residues.push_back(res);
    }
    std::uint64_t blocks = n == 0 ? 0 : (static_cast<std::uint64_t>(n) + k - 1) / k;
    std::uint32_t prev = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        at = r.pos;
        std::uint32_t t = r.u32("tau entry");
        expect(t >= prev, "tau must be non-decreasing", at);
        idx.sample.tau.push_back(t);
        prev = t;
    }
    expect(blocks == 0 ? n_c == 0 : prev == n_c,
           "final tau entry must equal the occurrence count",
           r.pos == 0 ? 0 : r.pos - 4);
    return idx;
}

OtsIndex load_ots(Reader& r) {
    OtsIndex idx;
    std::uint64_t at = r.pos;
    expect(r.u8("version") == kVersion, "unsupported version", at);
    at = r.pos;
    expect(r.u8("reserved") == 0, "reserved byte must be zero", at);
    std::uint32_t q = r.u32("q");
    expect(q >= 1, "interval factor q out of range", r.pos - 4);
    std::uint32_t n = r.u32("n");
    std::uint32_t n_hat = r.u32("n_hat");
    expect(n_hat <= n, "sampled length exceeds text length", r.pos - 4);
    at = r.pos;
    expect(r.u8("bitmap length") == 32, "alphabet bitmap must be 32 bytes", at);
    for (unsigned j = 0; j < 32; ++j) {
        std::uint8_t byte = r.u8("alphabet bitmap");
        for (unsigned i = 0; i < 8; ++i)
            if (byte & (1u << i)) idx.sampled_alphabet.set(8 * j + i);
    }
    std::uint64_t hash = r.u64("fingerprint");
    at = r.pos;
    expect(r.u8("flags") == 0, "unknown flag bits set", at);

    idx.q = q;
    idx.n = n;
    idx.source = {hash, n};
    idx.sampled_text.reserve(n_hat);
    for (std::uint32_t i = 0; i < n_hat; ++i) {
        at = r.pos;
        std::uint8_t b = r.u8("sampled text");
        expect(idx.sampled_alphabet.test(b), "sampled text byte outside sampled alphabet", at);
        idx.sampled_text.push_back(b);
    }
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0, count = n_hat / q; i < count; ++i) {
        at = r.pos;
        std::uint64_t p = r.u64("rho entry");
        expect(p > prev && p <= n, "rho must be strictly increasing within the text", at);
        idx.rho.push_back(p);
        prev = p;
    }
    return idx;
}

}  // namespace

AnyIndex load_index(std::istream& source) {
    Reader r(source);
    r.need(4, "magic");
    std::string magic(r.data.begin(), r.data.begin() + 4);
    r.pos = 4;
    AnyIndex result;
    if (magic == "CDSI") {
        result = load_cds(r);
    } else if (magic == "OTSI") {
        result = load_ots(r);
    } else {
        throw FormatError("unrecognized magic", 0);
    }
    expect(r.pos == r.data.size(), "trailing bytes after index payload", r.pos);
    return result;
}

AnyIndex load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open index file: " + path);
    return load_index(in);
}

}  // namespace cds
