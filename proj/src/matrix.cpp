#include "srqr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace srqr {

namespace {

std::size_t checked_size(Index rows, Index cols) {
    if (rows < 0 || cols < 0) {
        throw DimensionError("negative matrix dimension");
    }
    return static_cast<std::size_t>(rows * cols);
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(checked_size(rows, cols), 0.0) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
    if (data_.size() != checked_size(rows, cols)) {
        throw DimensionError("data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw NumericalError("matrix entries must be finite");
        }
    }
}

DenseMatrix DenseMatrix::identity(Index n) { return identity(n, n); }

DenseMatrix DenseMatrix::identity(Index rows, Index cols) {
    DenseMatrix m(rows, cols);
    for (Index i = 0; i < std::min(rows, cols); ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const auto nrows = static_cast<Index>(rows.size());
    const Index ncols = nrows == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    std::vector<double> data(static_cast<std::size_t>(nrows * ncols));
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != ncols) {
            throw DimensionError("ragged row list");
        }
        Index j = 0;
        for (double v : row) {
            data[static_cast<std::size_t>(j * nrows + i)] = v;
            ++j;
        }
        ++i;
    }
    return DenseMatrix(nrows, ncols, std::move(data));
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
    const auto n = static_cast<Index>(values.size());
    DenseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        m(i, i) = values[static_cast<std::size_t>(i)];
    }
    return m;
}

DenseMatrix DenseMatrix::copy_of(ConstMatrixView v) {
    DenseMatrix out(v.rows, v.cols);
    for (Index j = 0; j < v.cols; ++j) {
        std::copy_n(v.col_ptr(j), v.rows, out.col_ptr(j));
    }
    return out;
}

DenseMatrix DenseMatrix::block(Index row0, Index col0, Index nrows, Index ncols) const {
    if (row0 < 0 || col0 < 0 || nrows < 0 || ncols < 0 || row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw DimensionError("block out of range");
    }
    DenseMatrix out(nrows, ncols);
    for (Index j = 0; j < ncols; ++j) {
        std::copy_n(col_ptr(col0 + j) + row0, nrows, out.col_ptr(j));
    }
    return out;
}

void DenseMatrix::set_block(Index row0, Index col0, const DenseMatrix& src) {
    if (row0 < 0 || col0 < 0 || row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
        throw DimensionError("set_block out of range");
    }
    for (Index j = 0; j < src.cols(); ++j) {
        std::copy_n(src.col_ptr(j), src.rows(), col_ptr(col0 + j) + row0);
    }
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (Index j = 0; j < cols_; ++j) {
        for (Index i = 0; i < rows_; ++i) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

void DenseMatrix::swap_columns(Index a, Index b) noexcept {
    if (a == b) {
        return;
    }
    std::swap_ranges(col_ptr(a), col_ptr(a) + rows_, col_ptr(b));
}

double DenseMatrix::frobenius_norm() const noexcept {
    // Scaled accumulation so that tiny entries (Kahan tails) neither underflow nor lose digits.
    double scale = 0.0;
    double ssq = 1.0;
    for (double v : data_) {
        if (v != 0.0) {
            const double a = std::abs(v);
            if (scale < a) {
                ssq = 1.0 + ssq * (scale / a) * (scale / a);
                scale = a;
            } else {
                ssq += (a / scale) * (a / scale);
            }
        }
    }
    return scale * std::sqrt(ssq);
}

double DenseMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Permutation::Permutation(std::vector<Index> indices) : indices_(std::move(indices)) {
    std::vector<bool> seen(indices_.size(), false);
    for (Index v : indices_) {
        if (v < 0 || v >= static_cast<Index>(indices_.size()) || seen[static_cast<std::size_t>(v)]) {
            throw DimensionError("permutation indices are not a bijection on 0..n-1");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(Index n) {
    Permutation p;
    p.indices_.resize(static_cast<std::size_t>(n));
    std::iota(p.indices_.begin(), p.indices_.end(), Index{0});
    return p;
}

void Permutation::swap(Index a, Index b) noexcept {
    std::swap(indices_[static_cast<std::size_t>(a)], indices_[static_cast<std::size_t>(b)]);
}

void Permutation::rotate_left(Index from, Index to) {
    if (from < 0 || to >= size() || from > to) {
        throw DimensionError("rotate_left range invalid");
    }
    std::rotate(indices_.begin() + from, indices_.begin() + from + 1, indices_.begin() + to + 1);
}

void Permutation::compose_tail(Index offset, const Permutation& local) {
    if (offset < 0 || offset + local.size() > size()) {
        throw DimensionError("compose_tail range invalid");
    }
    std::vector<Index> tail(indices_.begin() + offset, indices_.begin() + offset + local.size());
    for (Index j = 0; j < local.size(); ++j) {
        indices_[static_cast<std::size_t>(offset + j)] = tail[static_cast<std::size_t>(local[j])];
    }
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.indices_.resize(indices_.size());
    for (std::size_t j = 0; j < indices_.size(); ++j) {
        inv.indices_[static_cast<std::size_t>(indices_[j])] = static_cast<Index>(j);
    }
    return inv;
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t j = 0; j < indices_.size(); ++j) {
        if (indices_[j] != static_cast<Index>(j)) {
            return false;
        }
    }
    return true;
}

DenseMatrix permute_columns(const DenseMatrix& a, const Permutation& pi) {
    if (pi.size() != a.cols()) {
        throw DimensionError("permutation length does not match column count");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        std::copy_n(a.col_ptr(pi[j]), a.rows(), out.col_ptr(j));
    }
    return out;
}

DenseMatrix unpermute_columns(const DenseMatrix& m, const Permutation& pi) {
    if (pi.size() != m.cols()) {
        throw DimensionError("permutation length does not match column count");
    }
    DenseMatrix out(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
        std::copy_n(m.col_ptr(j), m.rows(), out.col_ptr(pi[j]));
    }
    return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions differ");
    }
    DenseMatrix c(a.rows(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
        double* cj = c.col_ptr(j);
        for (Index l = 0; l < a.cols(); ++l) {
            const double blj = b(l, j);
            if (blj == 0.0) {
                continue;
            }
            const double* al = a.col_ptr(l);
            for (Index i = 0; i < a.rows(); ++i) {
                cj[i] += al[i] * blj;
            }
        }
    }
    return c;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("multiply_at_b: row counts differ");
    }
    DenseMatrix c(a.cols(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
        const double* bj = b.col_ptr(j);
        for (Index i = 0; i < a.cols(); ++i) {
            const double* ai = a.col_ptr(i);
            double s = 0.0;
            for (Index l = 0; l < a.rows(); ++l) {
                s += ai[l] * bj[l];
            }
            c(i, j) = s;
        }
    }
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("subtract: shapes differ");
    }
    DenseMatrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) {
        cd[i] -= bd[i];
    }
    return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("add: shapes differ");
    }
    DenseMatrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) {
        cd[i] += bd[i];
    }
    return c;
}

DenseMatrix scaled(const DenseMatrix& a, double factor) {
    DenseMatrix c = a;
    for (double& v : c.data()) {
        v *= factor;
    }
    return c;
}

std::vector<double> column_squared_norms(const DenseMatrix& a, Index row0) {
    std::vector<double> out(static_cast<std::size_t>(a.cols()), 0.0);
    for (Index j = 0; j < a.cols(); ++j) {
        const double* cj = a.col_ptr(j);
        double s = 0.0;
        for (Index i = row0; i < a.rows(); ++i) {
            s += cj[i] * cj[i];
        }
        out[static_cast<std::size_t>(j)] = s;
    }
    return out;
}

double max_column_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (double s : column_squared_norms(a)) {
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

void solve_upper_in_place(const DenseMatrix& u, DenseMatrix& b) {
    const Index n = b.rows();
    if (u.rows() < n || u.cols() < n) {
        throw DimensionError("solve_upper: triangle smaller than right-hand side");
    }
    for (Index c = 0; c < b.cols(); ++c) {
        double* x = b.col_ptr(c);
        for (Index i = n - 1; i >= 0; --i) {
            double s = x[i];
            for (Index j = i + 1; j < n; ++j) {
                s -= u(i, j) * x[j];
            }
            x[i] = s / u(i, i);
        }
    }
}

void solve_upper_transposed_in_place(const DenseMatrix& u, DenseMatrix& b) {
    const Index n = b.rows();
    if (u.rows() < n || u.cols() < n) {
        throw DimensionError("solve_upper_transposed: triangle smaller than right-hand side");
    }
    for (Index c = 0; c < b.cols(); ++c) {
        double* x = b.col_ptr(c);
        for (Index i = 0; i < n; ++i) {
            double s = x[i];
            const double* ui = u.col_ptr(i);
            for (Index j = 0; j < i; ++j) {
                s -= ui[j] * x[j];
            }
            x[i] = s / u(i, i);
        }
    }
}

DenseMatrix upper_part(const DenseMatrix& a) {
    DenseMatrix r = a;
    for (Index j = 0; j < r.cols(); ++j) {
        for (Index i = j + 1; i < r.rows(); ++i) {
            r(i, j) = 0.0;
        }
    }
    return r;
}

}  // namespace srqr
