#include "conic/alist.hpp"

#include <sstream>
#include <vector>

namespace conic {

std::string to_alist(const Gf2Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::size_t>> by_row(rows), by_col(cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (m.get(r, c)) {
                by_row[r].push_back(c + 1);
                by_col[c].push_back(r + 1);
            }
    std::size_t max_row = 0, max_col = 0;
    for (const auto& v : by_row) max_row = std::max(max_row, v.size());
    for (const auto& v : by_col) max_col = std::max(max_col, v.size());

    std::ostringstream out;
    out << rows << ' ' << cols << '\n';
    out << max_row << ' ' << max_col << '\n';
    auto emit_sizes = [&](const auto& lists) {
        for (std::size_t i = 0; i < lists.size(); ++i) out << (i ? " " : "") << lists[i].size();
        out << '\n';
    };
    auto emit_lists = [&](const auto& lists) {
        for (const auto& v : lists) {
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
            out << '\n';
        }
    };
    emit_sizes(by_row);
    emit_sizes(by_col);
    emit_lists(by_row);
    emit_lists(by_col);
    return out.str();
}

namespace {

struct LineReader {
    std::istringstream in;
    explicit LineReader(std::string_view text) : in(std::string(text)) {}

    std::vector<std::size_t> next(const char* what) {
        std::string line;
        if (!std::getline(in, line)) throw IoError(std::string("alist: missing ") + what);
        std::istringstream ls(line);
        std::vector<std::size_t> vals;
        long long v;
        while (ls >> v) {
            if (v < 0) throw IoError("alist: negative value");
            vals.push_back(static_cast<std::size_t>(v));
        }
        if (!ls.eof()) throw IoError(std::string("alist: bad token in ") + what);
        return vals;
    }
};

} // namespace

Gf2Matrix parse_alist(std::string_view text) {
    LineReader rd(text);
    auto dims = rd.next("dimensions");
    if (dims.size() != 2) throw IoError("alist: expected 'rows cols'");
    const std::size_t rows = dims[0], cols = dims[1];
    auto maxw = rd.next("max weights");
    if (maxw.size() != 2) throw IoError("alist: expected 'max_row_wt max_col_wt'");
    auto row_w = rd.next("row weights");
    auto col_w = rd.next("column weights");
    if (row_w.size() != rows || col_w.size() != cols) throw IoError("alist: weight lists truncated");

    Gf2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto idx = rd.next("row index list");
        if (idx.size() != row_w[r]) throw IoError("alist: row list length != weight");
        for (auto c : idx) {
            if (c < 1 || c > cols) throw IoError("alist: column index out of range");
            if (m.get(r, c - 1)) throw IoError("alist: duplicate column index");
            m.set(r, c - 1);
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        auto idx = rd.next("column index list");
        if (idx.size() != col_w[c]) throw IoError("alist: column list length != weight");
        for (auto r : idx) {
            if (r < 1 || r > rows) throw IoError("alist: row index out of range");
            if (!m.get(r - 1, c)) throw IoError("alist: row and column lists disagree");
        }
    }
    return m;
}

std::string to_bits(const Gf2Matrix& m) {
    std::string out;
    out.reserve(m.rows() * (m.cols() + 1));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

Gf2Matrix parse_bits(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        if (nl > start) lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty()) throw IoError("bits: empty input");
    const std::size_t cols = lines.front().size();
    Gf2Matrix m(lines.size(), cols);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != cols) throw IoError("bits: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            char ch = lines[r][c];
            if (ch == '1')
                m.set(r, c);
            else if (ch != '0')
                throw IoError("bits: unexpected character");
        }
    }
    return m;
}

} // namespace conic
