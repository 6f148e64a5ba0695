#include "srqr/cur_cx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srqr/pivoted_qr.hpp"

namespace srqr {

DenseMatrix least_squares(const DenseMatrix& c, const DenseMatrix& b) {
    const Index m = c.rows();
    const Index n = c.cols();
    if (b.rows() != m) {
        throw DimensionError("least_squares: row counts differ");
    }
    DenseMatrix x(n, b.cols());
    if (c.empty() || b.cols() == 0) {
        return x;
    }
    const PivotedQRFactorization f = qrcp(c, std::min(m, n));
    const double lead = std::abs(f.r(0, 0));
    Index rank = 0;
    while (rank < f.steps && std::abs(f.r(rank, rank)) > kRankThreshold * lead) {
        ++rank;
    }
    if (rank == 0) {
        return x;
    }

    DenseMatrix qtb = apply_q_transpose(f.q, b);
    DenseMatrix y = qtb.block(0, 0, rank, b.cols());

    // (R₁₁ R₁₂)ᵀ = Z·T, so (R₁₁ R₁₂) = Tᵀ·Zᵀ and x̃ = Z·T⁻ᵀ·y.
    const DenseMatrix top = f.r.block(0, 0, rank, n).transpose();
    const HouseholderQR z = householder_qr(top, rank);
    const DenseMatrix t = upper_part(z.r.block(0, 0, rank, rank));
    solve_upper_transposed_in_place(t, y);
    DenseMatrix xt(n, b.cols());
    xt.set_block(0, 0, y);
    z.q.apply_in_place(xt.view());
    for (Index j = 0; j < n; ++j) {
        const Index dst = f.pi[j];
        for (Index col = 0; col < b.cols(); ++col) {
            x(dst, col) = xt(j, col);
        }
    }
    return x;
}

DenseMatrix pseudo_inverse(const DenseMatrix& c) { return least_squares(c, DenseMatrix::identity(c.rows())); }

std::vector<Index> srqr_column_pivots(const DenseMatrix& a, Index count, const SRQRConfig& cfg) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (count < 1 || count > n) {
        throw DimensionError("column count " + std::to_string(count) + " outside [1, " + std::to_string(n) + "]");
    }
    SRQRConfig local = cfg;
    local.l = std::min(std::max(cfg.l, count), std::min(m, n));
    local.k = std::min(cfg.k, local.l);
    local.compress = false;
    local.spectral_diagnostics = false;
    local.exact_g2 = false;
    const SRQRResult res = srqr(a, local);
    const auto idx = res.factorization.pi.indices();
    return {idx.begin(), idx.begin() + count};
}

DenseMatrix select_columns(const DenseMatrix& a, const std::vector<Index>& cols) {
    DenseMatrix out(a.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] < 0 || cols[j] >= a.cols()) {
            throw DimensionError("select_columns: index out of range");
        }
        std::copy_n(a.col_ptr(cols[j]), a.rows(), out.col_ptr(static_cast<Index>(j)));
    }
    return out;
}

DenseMatrix select_rows(const DenseMatrix& a, const std::vector<Index>& rows) {
    DenseMatrix out(static_cast<Index>(rows.size()), a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= a.rows()) {
            throw DimensionError("select_rows: index out of range");
        }
        for (Index j = 0; j < a.cols(); ++j) {
            out(static_cast<Index>(i), j) = a(rows[i], j);
        }
    }
    return out;
}

DenseMatrix CURDecomposition::reconstruct(const DenseMatrix& a) const {
    return multiply(multiply(select_columns(a, c_cols), u), select_rows(a, r_rows));
}

DenseMatrix CXDecomposition::reconstruct(const DenseMatrix& a) const {
    return multiply(select_columns(a, c_cols), x);
}

CURDecomposition cur(const DenseMatrix& a, Index c, Index r, const SRQRConfig& cfg) {
    if (r < 1 || r > a.rows()) {
        throw DimensionError("cur: row count " + std::to_string(r) + " outside [1, " + std::to_string(a.rows()) + "]");
    }
    CURDecomposition d;
    d.c_cols = srqr_column_pivots(a, c, cfg);
    d.r_rows = srqr_column_pivots(a.transpose(), r, cfg);
    const DenseMatrix cm = select_columns(a, d.c_cols);
    const DenseMatrix rm = select_rows(a, d.r_rows);
    // U = C†·A·R†: first X = C†A, then U solves Rᵀ·Uᵀ = Xᵀ.
    const DenseMatrix x = least_squares(cm, a);
    d.u = least_squares(rm.transpose(), x.transpose()).transpose();
    return d;
}

CXDecomposition cx(const DenseMatrix& a, Index c, const SRQRConfig& cfg) {
    CXDecomposition d;
    d.c_cols = srqr_column_pivots(a, c, cfg);
    d.x = least_squares(select_columns(a, d.c_cols), a);
    return d;
}

}  // namespace srqr
