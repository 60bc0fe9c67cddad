#include <bms/io.hpp>

#include <json.hpp>

#include <bit>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>

namespace bms::io {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto end = text.find('\n');
        auto line = text.substr(0, end);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (end == std::string_view::npos) break;
        text.remove_prefix(end + 1);
    }
    return lines;
}

bool is_blank(std::string_view line) {
    for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Groups of consecutive non-blank lines.
std::vector<std::vector<std::string_view>> split_records(std::string_view text) {
    std::vector<std::vector<std::string_view>> records;
    std::vector<std::string_view> current;
    for (auto line : split_lines(text)) {
        if (is_blank(line)) {
            if (!current.empty()) records.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(line);
        }
    }
    if (!current.empty()) records.push_back(std::move(current));
    return records;
}

Index parse_index(std::string_view token, const char* what) {
    Index value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(std::string("invalid ") + what + ": '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

BinaryMatrix make_matrix(Index rows, Index cols) {
    if (rows < 1 || cols < 1 || rows > kMaxDimension || cols > kMaxDimension) {
        std::ostringstream msg;
        msg << "invalid matrix dimensions " << rows << "x" << cols;
        throw ParseError(msg.str());
    }
    return BinaryMatrix(rows, cols);
}

BinaryMatrix parse_dense(const std::vector<std::string_view>& lines) {
    const auto width = static_cast<Index>(lines.front().size());
    auto matrix = make_matrix(static_cast<Index>(lines.size()), width);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (static_cast<Index>(lines[i].size()) != width) {
            throw ParseError("dense row " + std::to_string(i) + " has length " +
                             std::to_string(lines[i].size()) + ", expected " + std::to_string(width));
        }
        for (std::size_t j = 0; j < lines[i].size(); ++j) {
            const char c = lines[i][j];
            if (c != '0' && c != '1') {
                throw ParseError("dense row " + std::to_string(i) + " contains '" + std::string(1, c) + "'");
            }
            if (c == '1') matrix.set(static_cast<Index>(i), static_cast<Index>(j));
        }
    }
    return matrix;
}

BinaryMatrix parse_coords(const std::vector<std::string_view>& lines) {
    const auto header = tokens(lines.front());
    if (header.size() != 3 || header[0] != "#") {
        throw ParseError("coords record must start with '# <rows> <cols>'");
    }
    auto matrix = make_matrix(parse_index(header[1], "row count"), parse_index(header[2], "column count"));
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto pair = tokens(lines[k]);
        if (pair.size() != 2) {
            throw ParseError("coords line must hold '<row> <col>': '" + std::string(lines[k]) + "'");
        }
        const Index i = parse_index(pair[0], "row index");
        const Index j = parse_index(pair[1], "column index");
        if (i < 0 || i >= matrix.rows() || j < 0 || j >= matrix.cols()) {
            throw ParseError("coords entry out of range: '" + std::string(lines[k]) + "'");
        }
        matrix.set(i, j);
    }
    return matrix;
}

std::vector<BinaryMatrix> parse_pbm(std::string_view text) {
    // Token stream with '#' comments stripped; digit rows may be contiguous.
    std::vector<std::string_view> toks;
    for (auto line : split_lines(text)) {
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        for (auto t : tokens(line)) toks.push_back(t);
    }
    std::vector<BinaryMatrix> out;
    std::size_t pos = 0;
    while (pos < toks.size()) {
        if (toks[pos] != "P1") {
            throw ParseError("expected pbm magic 'P1', got '" + std::string(toks[pos]) + "'");
        }
        if (pos + 2 >= toks.size()) {
            throw ParseError("truncated pbm header");
        }
        const Index cols = parse_index(toks[pos + 1], "pbm width");
        const Index rows = parse_index(toks[pos + 2], "pbm height");
        auto matrix = make_matrix(rows, cols);
        pos += 3;
        Index filled = 0;
        const Index total = rows * cols;
        while (filled < total) {
            if (pos >= toks.size()) {
                throw ParseError("truncated pbm raster");
            }
            for (char c : toks[pos]) {
                if ((c != '0' && c != '1') || filled >= total) {
                    throw ParseError("invalid pbm raster token '" + std::string(toks[pos]) + "'");
                }
                if (c == '1') matrix.set(filled / cols, filled % cols);
                ++filled;
            }
            ++pos;
        }
        out.push_back(std::move(matrix));
    }
    return out;
}

BinaryMatrix matrix_from_json(const json& obj) {
    if (!obj.is_object() || !obj.contains("rows") || !obj["rows"].is_array()) {
        throw ParseError("json matrix must be an object with a 'rows' array");
    }
    std::vector<std::string> rows;
    for (const auto& r : obj["rows"]) {
        if (!r.is_string()) throw ParseError("json rows must be strings");
        rows.push_back(r.get<std::string>());
    }
    auto matrix = from_rows(rows);
    const auto check_dim = [&](const char* key, Index expected) {
        if (obj.contains(key) && (!obj[key].is_number_integer() || obj[key].get<Index>() != expected)) {
            throw ParseError(std::string("json field '") + key + "' disagrees with rows");
        }
    };
    check_dim("m", matrix.rows());
    check_dim("n", matrix.cols());
    return matrix;
}

json matrix_to_json(const BinaryMatrix& matrix, const Metadata& meta) {
    json obj;
    obj["m"] = matrix.rows();
    obj["n"] = matrix.cols();
    if (meta.spec) {
        obj["a"] = meta.spec->row_sum();
        obj["b"] = meta.spec->col_sum();
    } else {
        obj["a"] = nullptr;
        obj["b"] = nullptr;
    }
    obj["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);
    obj["rows"] = to_rows(matrix);
    return obj;
}

void render_text(std::ostream& out, const BinaryMatrix& matrix, Format format) {
    switch (format) {
    case Format::dense:
        for (const auto& row : to_rows(matrix)) out << row << '\n';
        break;
    case Format::coords:
        out << "# " << matrix.rows() << ' ' << matrix.cols() << '\n';
        for (Index i = 0; i < matrix.rows(); ++i) {
            auto row = matrix.row_words(i);
            for (std::size_t w = 0; w < row.size(); ++w) {
                for (auto bits = row[w]; bits != 0; bits &= bits - 1) {
                    out << i << ' ' << static_cast<Index>(w) * BinaryMatrix::kWordBits + std::countr_zero(bits)
                        << '\n';
                }
            }
        }
        break;
    case Format::pbm:
        out << "P1\n" << matrix.cols() << ' ' << matrix.rows() << '\n';
        for (const auto& row : to_rows(matrix)) out << row << '\n';
        break;
    case Format::json:
        break;
    }
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "dense") return Format::dense;
    if (name == "coords") return Format::coords;
    if (name == "pbm") return Format::pbm;
    if (name == "json") return Format::json;
    throw InputError("unknown format '" + std::string(name) + "' (expected dense, coords, pbm or json)");
}

std::string_view format_name(Format format) {
    switch (format) {
    case Format::dense: return "dense";
    case Format::coords: return "coords";
    case Format::pbm: return "pbm";
    case Format::json: return "json";
    }
    return "dense";
}

std::string render(const BinaryMatrix& matrix, Format format, const Metadata& meta) {
    if (format == Format::json) {
        return matrix_to_json(matrix, meta).dump() + "\n";
    }
    std::ostringstream out;
    render_text(out, matrix, format);
    return out.str();
}

void write(std::ostream& out, std::span<const BinaryMatrix> matrices, Format format,
           const std::optional<MagicSpec>& spec, std::span<const std::uint64_t> seeds) {
    const auto seed_of = [&](std::size_t i) -> std::optional<std::uint64_t> {
        if (i < seeds.size()) return seeds[i];
        return std::nullopt;
    };
    if (format == Format::json) {
        if (matrices.size() == 1) {
            out << matrix_to_json(matrices[0], {spec, seed_of(0)}).dump() << '\n';
            return;
        }
        auto arr = json::array();
        for (std::size_t i = 0; i < matrices.size(); ++i) {
            arr.push_back(matrix_to_json(matrices[i], {spec, seed_of(i)}));
        }
        out << arr.dump() << '\n';
        return;
    }
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (i) out << '\n';
        render_text(out, matrices[i], format);
    }
}

std::vector<BinaryMatrix> parse(std::string_view text, Format format) {
    std::vector<BinaryMatrix> out;
    switch (format) {
    case Format::dense:
        for (const auto& record : split_records(text)) out.push_back(parse_dense(record));
        break;
    case Format::coords:
        for (const auto& record : split_records(text)) out.push_back(parse_coords(record));
        break;
    case Format::pbm:
        out = parse_pbm(text);
        break;
    case Format::json: {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid json: ") + e.what());
        }
        if (doc.is_array()) {
            for (const auto& obj : doc) out.push_back(matrix_from_json(obj));
        } else {
            out.push_back(matrix_from_json(doc));
        }
        break;
    }
    }
    if (out.empty()) {
        throw ParseError("no matrix found in input");
    }
    return out;
}

BinaryMatrix parse_one(std::string_view text, Format format) {
    auto all = parse(text, format);
    if (all.size() != 1) {
        throw ParseError("expected exactly one matrix, found " + std::to_string(all.size()));
    }
    return std::move(all.front());
}

BinaryMatrix from_rows(std::span<const std::string> rows) {
    if (rows.empty()) {
        throw ParseError("matrix has no rows");
    }
    std::vector<std::string_view> views(rows.begin(), rows.end());
    return parse_dense(views);
}

std::vector<std::string> to_rows(const BinaryMatrix& matrix) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(matrix.rows()));
    for (Index i = 0; i < matrix.rows(); ++i) {
        std::string row(static_cast<std::size_t>(matrix.cols()), '0');
        for (Index j = 0; j < matrix.cols(); ++j) {
            if (matrix(i, j)) row[static_cast<std::size_t>(j)] = '1';
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bms::io
