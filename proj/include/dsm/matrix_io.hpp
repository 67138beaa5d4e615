#pragma once

// Matrix files.
//
//   JSON:  {"n": 3, "rows": [["3/5","0","2/5"], ...]}
//   CSV:   one row per line, comma-separated, same fraction strings.
//
// Entries are exact: "p/q" or integer strings (JSON integers are accepted
// too).  Decimals are rejected.  Output is always compact JSON and is
// byte-stable for equal matrices.

#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"
#include "dsm/rational.hpp"

#include "json.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dsm {

namespace detail {

struct TextPos {
    std::size_t line;
    std::size_t column;
};

inline TextPos position_of(std::string_view text, std::size_t offset) {
    TextPos p{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

// Byte offsets of the scalar tokens nested three levels deep, i.e. the
// entries of "rows" in the matrix schema, in document order.
inline std::vector<std::size_t> depth3_scalar_offsets(std::string_view text) {
    std::vector<std::size_t> out;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '{' || c == '[') {
            ++depth;
        } else if (c == '}' || c == ']') {
            --depth;
        } else if (c == '"') {
            if (depth == 3) out.push_back(i);
            for (++i; i < text.size() && text[i] != '"'; ++i)
                if (text[i] == '\\') ++i;
        } else if (c == '-' || (c >= '0' && c <= '9') || c == 't' || c == 'f' || c == 'n') {
            if (depth == 3) out.push_back(i);
            while (i + 1 < text.size() && std::string_view(",]} \t\r\n").find(text[i + 1]) == std::string_view::npos)
                ++i;
        }
    }
    return out;
}

inline RatMatrix parse_json_matrix(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto p = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(p.line, p.column, "malformed JSON");
    }
    if (!doc.is_object()) throw ParseError(1, 1, "expected a JSON object with keys \"n\" and \"rows\"");
    for (const auto& [key, _] : doc.items())
        if (key != "n" && key != "rows") throw ParseError(1, 1, "unknown key \"" + key + "\"");
    if (!doc.contains("rows") || !doc["rows"].is_array()) throw ParseError(1, 1, "missing array \"rows\"");

    const auto& rows = doc["rows"];
    const std::size_t n = rows.size();
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n))
            throw ParseError(1, 1, "\"n\" does not match the number of rows (" + std::to_string(n) + ")");
    }

    const auto offsets = depth3_scalar_offsets(text);
    std::size_t flat = 0;
    auto fail_at = [&](std::size_t index, const std::string& what) -> ParseError {
        TextPos p = index < offsets.size() ? position_of(text, offsets[index]) : TextPos{1, 1};
        return ParseError(p.line, p.column, what);
    };

    std::vector<std::vector<Rational>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != n)
            throw fail_at(flat, "row " + std::to_string(i) + " must be an array of " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j, ++flat) {
            const auto& cell = row[j];
            std::optional<Rational> r;
            if (cell.is_string()) r = Rational::try_parse(cell.get<std::string>());
            else if (cell.is_number_integer()) r = Rational::try_parse(cell.dump());
            if (!r) throw fail_at(flat, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                            cell.dump() + " is not an exact fraction");
            out[i].push_back(std::move(*r));
        }
    }
    return RatMatrix::from_rows(out);
}

inline RatMatrix parse_csv_matrix(std::string_view text) {
    std::vector<std::vector<Rational>> out;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#') {
            std::vector<Rational> row;
            std::size_t fstart = 0;
            for (;;) {
                std::size_t comma = line.find(',', fstart);
                std::string_view field = line.substr(fstart, comma == std::string_view::npos ? line.size() - fstart
                                                                                            : comma - fstart);
                std::string_view inner = field;
                while (!inner.empty() && (inner.front() == ' ' || inner.front() == '\t')) inner.remove_prefix(1);
                while (!inner.empty() && (inner.back() == ' ' || inner.back() == '\t')) inner.remove_suffix(1);
                if (inner.size() >= 2 && inner.front() == '"' && inner.back() == '"')
                    inner = inner.substr(1, inner.size() - 2);
                auto r = Rational::try_parse(inner);
                if (!r)
                    throw ParseError(line_no, fstart + 1, "'" + std::string(inner) + "' is not an exact fraction");
                row.push_back(std::move(*r));
                if (comma == std::string_view::npos) break;
                fstart = comma + 1;
            }
            out.push_back(std::move(row));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (out.empty()) throw ParseError(1, 1, "empty matrix");
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() != out.size())
            throw ParseError(1, 1, "row " + std::to_string(i) + " has " + std::to_string(out[i].size()) +
                                       " entries, expected " + std::to_string(out.size()));
    return RatMatrix::from_rows(out);
}

} // namespace detail

/// Parse a matrix from text; JSON if the first non-blank character is '{',
/// CSV otherwise.  Throws ParseError.
inline RatMatrix parse_matrix(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return detail::parse_json_matrix(text);
    return detail::parse_csv_matrix(text);
}

inline RatMatrix read_matrix(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_matrix(text);
}

inline RatMatrix read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_matrix(in);
}

inline nlohmann::ordered_json matrix_rows_json(const RatMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& x : m.row(i)) row.push_back(x.str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::ordered_json matrix_json(const RatMatrix& m) {
    nlohmann::ordered_json j;
    j["n"] = m.order();
    j["rows"] = matrix_rows_json(m);
    return j;
}

/// Compact JSON, no trailing newline.
inline std::string write_matrix(const RatMatrix& m) { return matrix_json(m).dump(); }

inline std::string write_matrix_csv(const RatMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) {
            if (j) out += ',';
            out += m(i, j).str();
        }
        out += '\n';
    }
    return out;
}

} // namespace dsm
