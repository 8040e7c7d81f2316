#include "demreg/grid_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace demreg {
namespace {

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;

    // Whitespace-delimited tokens; empty view at end of input.
    std::string_view next() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    std::string_view peek() {
        const std::size_t saved = pos;
        const std::string_view tok = next();
        pos = saved;
        return tok;
    }
};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

bool parse_int(std::string_view token, int& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

double header_number(Tokenizer& tok, std::string_view keyword) {
    const std::string_view kw = tok.next();
    if (!iequals(kw, keyword))
        fail(ErrorCode::MalformedHeader,
             "expected keyword '" + std::string(keyword) + "', got '" + std::string(kw) + "'");
    const std::string_view value = tok.next();
    double parsed = 0.0;
    if (!parse_double(value, parsed))
        fail(ErrorCode::MalformedHeader,
             "non-numeric value '" + std::string(value) + "' for '" + std::string(keyword) + "'");
    return parsed;
}

int header_count(Tokenizer& tok, std::string_view keyword) {
    const std::string_view kw = tok.next();
    if (!iequals(kw, keyword))
        fail(ErrorCode::MalformedHeader,
             "expected keyword '" + std::string(keyword) + "', got '" + std::string(kw) + "'");
    const std::string_view value = tok.next();
    int parsed = 0;
    if (!parse_int(value, parsed) || parsed < 1)
        fail(ErrorCode::MalformedHeader,
             "'" + std::string(keyword) + "' must be a positive integer, got '" +
                 std::string(value) + "'");
    return parsed;
}

} // namespace

Grid parse_grid(std::string_view text) {
    Tokenizer tok{text};

    GridHeader header;
    header.ncols = header_count(tok, "ncols");
    header.nrows = header_count(tok, "nrows");
    header.xllcorner = header_number(tok, "xllcorner");
    header.yllcorner = header_number(tok, "yllcorner");
    header.cellsize = header_number(tok, "cellsize");
    if (!(header.cellsize > 0.0))
        fail(ErrorCode::MalformedHeader, "cellsize must be positive");
    if (!std::isfinite(header.xllcorner) || !std::isfinite(header.yllcorner) ||
        !std::isfinite(header.cellsize))
        fail(ErrorCode::MalformedHeader, "georeference fields must be finite");

    if (iequals(tok.peek(), "nodata_value")) {
        header.nodata_value = header_number(tok, "nodata_value");
        if (!std::isfinite(header.nodata_value))
            fail(ErrorCode::MalformedHeader, "nodata_value must be finite");
    }

    const std::size_t expected =
        static_cast<std::size_t>(header.ncols) * static_cast<std::size_t>(header.nrows);
    std::vector<double> values;
    values.reserve(expected);
    for (;;) {
        const std::string_view token = tok.next();
        if (token.empty()) break;
        double v = 0.0;
        if (!parse_double(token, v))
            fail(ErrorCode::CellCountMismatch,
                 "unparsable cell value '" + std::string(token) + "' at index " +
                     std::to_string(values.size()));
        if (!std::isfinite(v))
            fail(ErrorCode::NonFiniteValue,
                 "non-finite cell value at index " + std::to_string(values.size()));
        values.push_back(v);
        if (values.size() > expected)
            fail(ErrorCode::CellCountMismatch,
                 "payload exceeds " + std::to_string(expected) + " cells");
    }
    if (values.size() != expected)
        fail(ErrorCode::CellCountMismatch, "payload holds " + std::to_string(values.size()) +
                                               " cells, header promises " +
                                               std::to_string(expected));
    return Grid(header, std::move(values));
}

std::string format_number(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

namespace {

// Payload cells always carry a decimal marker so elevations read back as
// floating values; the nodata sentinel stays identical to the header token.
std::string format_elevation(double v, double nodata) {
    std::string s = format_number(v);
    if (v == nodata) return s;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

} // namespace

std::string serialize_grid(const Grid& grid) {
    const GridHeader& h = grid.header();
    std::string out;
    out.reserve(grid.size() * 8 + 128);
    out += "ncols " + std::to_string(h.ncols) + "\n";
    out += "nrows " + std::to_string(h.nrows) + "\n";
    out += "xllcorner " + format_number(h.xllcorner) + "\n";
    out += "yllcorner " + format_number(h.yllcorner) + "\n";
    out += "cellsize " + format_number(h.cellsize) + "\n";
    out += "NODATA_value " + format_number(h.nodata_value) + "\n";
    for (int r = 0; r < h.nrows; ++r) {
        for (int c = 0; c < h.ncols; ++c) {
            if (c > 0) out += ' ';
            out += format_elevation(grid.at(r, c), h.nodata_value);
        }
        out += '\n';
    }
    return out;
}

Grid read_grid_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_grid(buffer.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_grid_file(const std::string& path, const Grid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    const std::string text = serialize_grid(grid);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(ErrorCode::IoError, "failed writing '" + path + "'");
}

} // namespace demreg
