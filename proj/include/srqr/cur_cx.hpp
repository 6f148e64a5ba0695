#pragma once

#include <vector>

#include "srqr/matrix.hpp"
#include "srqr/srqr.hpp"

namespace srqr {

struct CURDecomposition {
    std::vector<Index> c_cols;
    std::vector<Index> r_rows;
    DenseMatrix u;  // c × r

    /// C·U·R assembled from A's selected columns and rows.
    DenseMatrix reconstruct(const DenseMatrix& a) const;
};

struct CXDecomposition {
    std::vector<Index> c_cols;
    DenseMatrix x;  // c × n

    DenseMatrix reconstruct(const DenseMatrix& a) const;
};

/// Relative rank threshold for the least-squares solves, applied to the
/// leading diagonal of the pivoted QR.
inline constexpr double kRankThreshold = 1e3 * kEpsilon;

/// Minimum-norm X minimizing ‖C·X − B‖_F (complete orthogonal
/// decomposition from QR with column pivoting).
DenseMatrix least_squares(const DenseMatrix& c, const DenseMatrix& b);

/// Moore–Penrose pseudo-inverse via least_squares(C, I).
DenseMatrix pseudo_inverse(const DenseMatrix& c);

/// First `count` SRQR pivots of A, with the working rank raised to `count`
/// (capped at min(m, n)).
std::vector<Index> srqr_column_pivots(const DenseMatrix& a, Index count, const SRQRConfig& cfg);

DenseMatrix select_columns(const DenseMatrix& a, const std::vector<Index>& cols);
DenseMatrix select_rows(const DenseMatrix& a, const std::vector<Index>& rows);

/// Columns from SRQR on A, rows from SRQR on Aᵀ, U = C†·A·R†.
CURDecomposition cur(const DenseMatrix& a, Index c, Index r, const SRQRConfig& cfg);

/// Columns from SRQR on A, X = C†·A.
CXDecomposition cx(const DenseMatrix& a, Index c, const SRQRConfig& cfg);

}  // namespace srqr
