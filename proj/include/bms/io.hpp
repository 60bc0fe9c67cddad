#pragma once

#include <bms/core.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bms::io {

/// Text encodings of a matrix.
///   dense  - one line of '0'/'1' per row
///   coords - "# <rows> <cols>" header, then "<row> <col>" per 1-entry, ascending
///   pbm    - plain portable bitmap: "P1", "<cols> <rows>", one digit row per line
///   json   - {"m","n","a","b","seed","rows":["0110",...]}
/// Text formats separate consecutive matrices with a blank line; json
/// writes a single object, or an array of objects for several matrices.
enum class Format { dense, coords, pbm, json };

Format parse_format(std::string_view name);
std::string_view format_name(Format format);

/// Metadata echoed into json output; ignored by the text formats.
struct Metadata {
    std::optional<MagicSpec> spec;
    std::optional<std::uint64_t> seed;
};

std::string render(const BinaryMatrix& matrix, Format format, const Metadata& meta = {});

/// seeds, when non-empty, gives the per-matrix seed for json output.
void write(std::ostream& out, std::span<const BinaryMatrix> matrices, Format format,
           const std::optional<MagicSpec>& spec = std::nullopt,
           std::span<const std::uint64_t> seeds = {});

/// Parses every matrix in `text`. Throws ParseError on malformed input or
/// when no matrix is present.
std::vector<BinaryMatrix> parse(std::string_view text, Format format);
BinaryMatrix parse_one(std::string_view text, Format format);

/// Builds a matrix from '0'/'1' row strings of equal length.
BinaryMatrix from_rows(std::span<const std::string> rows);
std::vector<std::string> to_rows(const BinaryMatrix& matrix);

} // namespace bms::io
