#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "srqr/common.hpp"

namespace srqr {

/// Non-owning window into column-major storage with leading dimension `ld`.
template <typename T>
struct BasicMatrixView {
    T* data = nullptr;
    Index rows = 0;
    Index cols = 0;
    Index ld = 0;

    T& operator()(Index i, Index j) const noexcept { return data[j * ld + i]; }
    T* col_ptr(Index j) const noexcept { return data + j * ld; }
    BasicMatrixView sub(Index row0, Index col0, Index nrows, Index ncols) const noexcept {
        return {data + col0 * ld + row0, nrows, ncols, ld};
    }
    operator BasicMatrixView<const T>() const noexcept { return {data, rows, cols, ld}; }
};

using MatrixView = BasicMatrixView<double>;
using ConstMatrixView = BasicMatrixView<const double>;

/// Column-major dense real matrix.
///
/// Constructors reject non-finite entries; element access afterwards is
/// unchecked so kernels can write in place.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(Index rows, Index cols);
    DenseMatrix(Index rows, Index cols, std::vector<double> column_major);

    static DenseMatrix identity(Index n);
    static DenseMatrix identity(Index rows, Index cols);
    /// Builds from a row-wise nested list, which reads naturally in tests.
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix diagonal(std::span<const double> values);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index size() const noexcept { return rows_ * cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(Index i, Index j) noexcept { return data_[static_cast<std::size_t>(j * rows_ + i)]; }
    double operator()(Index i, Index j) const noexcept {
        return data_[static_cast<std::size_t>(j * rows_ + i)];
    }

    std::span<double> col(Index j) noexcept {
        return {data_.data() + j * rows_, static_cast<std::size_t>(rows_)};
    }
    std::span<const double> col(Index j) const noexcept {
        return {data_.data() + j * rows_, static_cast<std::size_t>(rows_)};
    }
    double* col_ptr(Index j) noexcept { return data_.data() + j * rows_; }
    const double* col_ptr(Index j) const noexcept { return data_.data() + j * rows_; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    MatrixView view() noexcept { return {data_.data(), rows_, cols_, rows_}; }
    ConstMatrixView view() const noexcept { return {data_.data(), rows_, cols_, rows_}; }
    MatrixView view(Index row0, Index col0, Index nrows, Index ncols) noexcept {
        return view().sub(row0, col0, nrows, ncols);
    }
    ConstMatrixView view(Index row0, Index col0, Index nrows, Index ncols) const noexcept {
        return view().sub(row0, col0, nrows, ncols);
    }
    static DenseMatrix copy_of(ConstMatrixView v);

    DenseMatrix block(Index row0, Index col0, Index nrows, Index ncols) const;
    void set_block(Index row0, Index col0, const DenseMatrix& src);
    DenseMatrix transpose() const;

    void swap_columns(Index a, Index b) noexcept;

    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

/// Column permutation Π stored as the list of original column indices:
/// column j of AΠ is column indices[j] of A.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Index> indices);

    static Permutation identity(Index n);

    Index size() const noexcept { return static_cast<Index>(indices_.size()); }
    Index operator[](Index j) const noexcept { return indices_[static_cast<std::size_t>(j)]; }
    std::span<const Index> indices() const noexcept { return indices_; }

    void swap(Index a, Index b) noexcept;
    /// Moves position `from` to position `to` (from < to), shifting the
    /// positions in between one place left.
    void rotate_left(Index from, Index to);
    /// Composes with a permutation acting on the positions [offset, offset + local.size()).
    void compose_tail(Index offset, const Permutation& local);

    Permutation inverse() const;
    bool is_identity() const noexcept;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Index> indices_;
};

/// Returns AΠ.
DenseMatrix permute_columns(const DenseMatrix& a, const Permutation& pi);
/// Returns MΠᵀ, undoing permute_columns.
DenseMatrix unpermute_columns(const DenseMatrix& m, const Permutation& pi);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// Aᵀ·B without forming the transpose.
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scaled(const DenseMatrix& a, double factor);

/// Squared 2-norm of each column of the block rows [row0, rows).
std::vector<double> column_squared_norms(const DenseMatrix& a, Index row0 = 0);
/// Largest column 2-norm, written ‖·‖₁,₂ in the analysis.
double max_column_norm(const DenseMatrix& a);

/// Solves U·X = B in place for upper-triangular U (leading n×n of `u`).
void solve_upper_in_place(const DenseMatrix& u, DenseMatrix& b);
/// Solves Uᵀ·X = B in place for upper-triangular U.
void solve_upper_transposed_in_place(const DenseMatrix& u, DenseMatrix& b);

/// Copy of the upper triangle/trapezoid of `a`, zeros below the diagonal.
DenseMatrix upper_part(const DenseMatrix& a);

}  // namespace srqr
