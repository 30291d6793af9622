#pragma once

// Line formats shared by the CLI and tests.
//
//   vector:  "M n : x_1 x_2 ... x_n"
//   matrix:  header "rows width", then one line of 0/1 characters per row.
//            For received (ragged) matrices width is the longest row and
//            lines may be shorter, including empty.

#include <istream>
#include <sstream>
#include <string>

#include "cdna/core.hpp"

namespace cdna {

inline std::string format_vector(const CompositeVector& x) {
    std::ostringstream out;
    out << x.strands() << ' ' << x.length() << " :";
    for (Level v : x.entries()) out << ' ' << v;
    return out.str();
}

inline CompositeVector parse_vector(const std::string& line) {
    std::istringstream in(line);
    long long M = -1, n = -1;
    std::string colon;
    if (!(in >> M >> n >> colon) || colon != ":") throw FormatError("expected 'M n : x_1 ... x_n'");
    if (M < 1 || n < 1) throw FormatError("vector header needs M >= 1 and n >= 1");
    std::vector<Level> entries;
    long long v;
    while (in >> v) {
        if (v < 0 || v > M) throw FormatError("vector entry outside [0, M]");
        entries.push_back(static_cast<Level>(v));
    }
    if (!in.eof()) throw FormatError("non-numeric vector entry");
    if (entries.size() != static_cast<std::size_t>(n)) throw FormatError("vector length does not match header");
    return CompositeVector(static_cast<Level>(M), std::move(entries));
}

inline std::string format_matrix(const ChannelOutput& R) {
    std::string out = std::to_string(R.row_count()) + ' ' + std::to_string(R.max_length()) + '\n';
    for (const Row& r : R.rows()) out += r.to_string() + '\n';
    return out;
}

inline std::string format_matrix(const StrandMatrix& X) { return format_matrix(ChannelOutput(X)); }

inline ChannelOutput parse_matrix(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw FormatError("missing matrix header");
    std::istringstream hs(header);
    long long rows = -1, width = -1;
    std::string extra;
    if (!(hs >> rows >> width) || (hs >> extra) || rows < 0 || width < 0)
        throw FormatError("expected matrix header 'rows width'");
    std::vector<Row> out;
    out.reserve(static_cast<std::size_t>(rows));
    for (long long i = 0; i < rows; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw FormatError("matrix has fewer rows than its header");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() > static_cast<std::size_t>(width)) throw FormatError("matrix row longer than header width");
        out.push_back(Row::from_string(line));
    }
    return ChannelOutput(std::move(out));
}

inline ChannelOutput parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

inline StrandMatrix to_strand_matrix(const ChannelOutput& R) { return StrandMatrix(R.rows()); }

}  // namespace cdna
