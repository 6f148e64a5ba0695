#include "srqr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace srqr {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view s, Index line) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError("not a number: '" + std::string(s) + "'", line);
    }
    if (!std::isfinite(v)) {
        throw ParseError("non-finite value", line);
    }
    return v;
}

Index parse_index(std::string_view s, Index line) {
    s = trim(s);
    Index v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError("not an integer: '" + std::string(s) + "'", line);
    }
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

DenseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    Index lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError("empty Matrix Market file", 1);
    }
    ++lineno;
    const auto head = split_ws(line);
    if (head.size() != 5 || lower(head[0]) != "%%matrixmarket" || lower(head[1]) != "matrix") {
        throw ParseError("missing %%MatrixMarket matrix header", lineno);
    }
    const std::string layout = lower(head[2]);
    const std::string field = lower(head[3]);
    const std::string symmetry = lower(head[4]);
    if (layout != "array" && layout != "coordinate") {
        throw ParseError("unsupported layout '" + layout + "'", lineno);
    }
    if (field != "real" && field != "integer" && field != "double") {
        throw ParseError("unsupported field '" + field + "'", lineno);
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
    }
    const bool symmetric = symmetry == "symmetric";

    auto next_data_line = [&](std::vector<std::string_view>& tokens) {
        while (std::getline(in, line)) {
            ++lineno;
            const std::string_view t = trim(line);
            if (t.empty() || t.front() == '%') {
                continue;
            }
            tokens = split_ws(line);
            return true;
        }
        return false;
    };

    std::vector<std::string_view> tok;
    if (!next_data_line(tok)) {
        throw ParseError("missing size line", lineno);
    }
    const bool coord = layout == "coordinate";
    if (tok.size() != (coord ? 3u : 2u)) {
        throw ParseError("malformed size line", lineno);
    }
    const Index m = parse_index(tok[0], lineno);
    const Index n = parse_index(tok[1], lineno);
    if (m < 0 || n < 0 || (symmetric && m != n)) {
        throw ParseError("invalid dimensions", lineno);
    }
    DenseMatrix a(m, n);
    if (coord) {
        const Index nnz = parse_index(tok[2], lineno);
        for (Index e = 0; e < nnz; ++e) {
            if (!next_data_line(tok)) {
                throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(e), lineno);
            }
            if (tok.size() != 3) {
                throw ParseError("coordinate entry needs 'row col value'", lineno);
            }
            const Index i = parse_index(tok[0], lineno) - 1;
            const Index j = parse_index(tok[1], lineno) - 1;
            if (i < 0 || i >= m || j < 0 || j >= n) {
                throw ParseError("entry index out of range", lineno);
            }
            const double v = parse_double(tok[2], lineno);
            a(i, j) += v;
            if (symmetric && i != j) {
                a(j, i) += v;
            }
        }
    } else {
        std::vector<double> vals;
        while (next_data_line(tok)) {
            for (const auto t : tok) {
                vals.push_back(parse_double(t, lineno));
            }
        }
        if (symmetric) {
            const std::size_t want = static_cast<std::size_t>(n * (n + 1) / 2);
            if (vals.size() != want) {
                throw ParseError("expected " + std::to_string(want) + " values", lineno);
            }
            std::size_t p = 0;
            for (Index j = 0; j < n; ++j) {
                for (Index i = j; i < n; ++i) {
                    a(i, j) = vals[p];
                    a(j, i) = vals[p];
                    ++p;
                }
            }
        } else {
            if (vals.size() != static_cast<std::size_t>(m * n)) {
                throw ParseError("expected " + std::to_string(m * n) + " values, found " + std::to_string(vals.size()),
                                 lineno);
            }
            std::copy(vals.begin(), vals.end(), a.data().begin());
        }
    }
    return a;
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a, bool coordinate) {
    if (coordinate) {
        Index nnz = 0;
        for (const double v : a.data()) {
            nnz += v != 0.0;
        }
        out << "%%MatrixMarket matrix coordinate real general\n" << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
        for (Index j = 0; j < a.cols(); ++j) {
            for (Index i = 0; i < a.rows(); ++i) {
                if (a(i, j) != 0.0) {
                    out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j)) << '\n';
                }
            }
        }
        return;
    }
    out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
    for (const double v : a.data()) {
        out << format_double(v) << '\n';
    }
}

DenseMatrix read_csv(std::istream& in) {
    std::string line;
    Index lineno = 0;
    std::vector<double> rowwise;
    Index cols = -1;
    Index rows = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        Index count = 0;
        std::size_t pos = 0;
        while (true) {
            std::size_t end = line.find(',', pos);
            std::string_view field = std::string_view(line).substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            field = trim(field);
            if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
                field = field.substr(1, field.size() - 2);
            }
            rowwise.push_back(parse_double(field, lineno));
            ++count;
            if (end == std::string::npos) {
                break;
            }
            pos = end + 1;
        }
        if (cols < 0) {
            cols = count;
        } else if (count != cols) {
            throw ParseError("ragged row: expected " + std::to_string(cols) + " fields, found " + std::to_string(count),
                             lineno);
        }
        ++rows;
    }
    if (rows == 0) {
        return DenseMatrix();
    }
    DenseMatrix a(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            a(i, j) = rowwise[static_cast<std::size_t>(i * cols + j)];
        }
    }
    return a;
}

void write_csv(std::ostream& out, const DenseMatrix& a) {
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(a(i, j));
        }
        out << '\n';
    }
}

namespace {

MatrixFormat resolve(const std::string& path, MatrixFormat format) {
    if (format != MatrixFormat::Auto) {
        return format;
    }
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
    return ext == "mtx" || ext == "mm" ? MatrixFormat::MatrixMarket : MatrixFormat::Csv;
}

}  // namespace

DenseMatrix load_matrix(const std::string& path, MatrixFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return resolve(path, format) == MatrixFormat::MatrixMarket ? read_matrix_market(in) : read_csv(in);
}

void save_matrix(const std::string& path, const DenseMatrix& a, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    if (resolve(path, format) == MatrixFormat::MatrixMarket) {
        write_matrix_market(out, a);
    } else {
        write_csv(out, a);
    }
}

}  // namespace srqr
