#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "cds/ots.hpp"
#include "cds/sampling.hpp"

namespace cds {

// Malformed or truncated index file; `offset` is the byte offset at which
// the problem was detected.
struct FormatError : std::runtime_error {
    FormatError(const std::string& what, std::uint64_t offset_)
        : std::runtime_error(what + " (at offset " + std::to_string(offset_) + ")"),
          offset(offset_) {}
    std::uint64_t offset;
};

using AnyIndex = std::variant<CdsIndex, OtsIndex>;

// Little-endian, fixed-width on-disk layout.
//
//   offset  size  field
//   0       4     magic "CDSI" / "OTSI"
//   4       1     version (= 1)
//   5       1     reserved (= 0)
//   6       4     k (CDS) / q (OTS)
//   10      4     n, text length
//   14      4     n_c (CDS) / n-hat (OTS)
//   18      1     pivot-set size (CDS) / alphabet-bitmap length = 32 (OTS)
//   19      var   pivot bytes ascending (CDS) / 256-bit alphabet bitmap,
//                 bit (8j+i) = byte 8j+i sampled, LSB first (OTS)
//   ..      8     source fingerprint, FNV-1a of the text
//   ..      1     flags: bit0 = fast_path_ok (CDS), 0 (OTS)
//   ..      var   payload: residues n_c x 1B then tau ceil(n/k) x 4B (CDS);
//                 y-hat bytes then rho floor(n-hat/q) x 8B (OTS)
//
// Totals: 28 + |pivots| + n_c + 4*ceil(n/k) bytes for CDS,
//         28 + 32 + n-hat + 8*floor(n-hat/q) bytes for OTS.
//
// The one-byte residue entries require k <= 256; 32-bit fields cap n and
// n_c at 2^32-1 (plenty for the desk-scale corpora this targets).  Saving
// an index that violates either limit throws std::invalid_argument.

// Returns total bytes written.  Throws std::ios_base::failure on sink failure.
std::uint64_t save_index(const CdsIndex& idx, std::ostream& sink);
std::uint64_t save_index(const OtsIndex& idx, std::ostream& sink);
std::uint64_t save_index_file(const AnyIndex& idx, const std::string& path);

// Validates magic, version, all structural invariants (tau monotone,
// residues < k, rho strictly increasing, ...), and exact file length;
// throws FormatError naming the offending offset.
AnyIndex load_index(std::istream& source);
AnyIndex load_index_file(const std::string& path);

// Size the save would produce, from the format arithmetic alone.
std::uint64_t saved_index_size(const CdsIndex& idx);
std::uint64_t saved_index_size(const OtsIndex& idx);

}  // namespace cds
