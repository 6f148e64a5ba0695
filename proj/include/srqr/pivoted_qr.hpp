#pragma once

#include <utility>

#include "srqr/householder.hpp"
#include "srqr/matrix.hpp"

namespace srqr {

/// Partial pivoted QR AΠ = Q·R after `steps` elimination steps.
///
/// `r` is the full m×n matrix QᵀAΠ: upper triangular R₁₁ and R₁₂ in the
/// first `steps` rows, zeros below the diagonal of the first `steps`
/// columns, and the untouched-by-pivoting trailing block R₂₂.
struct PivotedQRFactorization {
    OrthogonalFactor q;
    DenseMatrix r;
    Permutation pi;
    Index steps = 0;

    /// The zero-step factorization (Q = I, R = A, Π = I).
    static PivotedQRFactorization unfactored(const DenseMatrix& a);

    DenseMatrix r11() const { return r.block(0, 0, steps, steps); }
    DenseMatrix r12() const { return r.block(0, steps, steps, r.cols() - steps); }
    DenseMatrix r22() const { return r.block(steps, steps, r.rows() - steps, r.cols() - steps); }
    /// The leading rows (R₁₁ R₁₂).
    DenseMatrix r_tilde() const { return r.block(0, 0, steps, r.cols()); }
};

struct QrcpOptions {
    /// Columns per panel for the blocked trailing update; 1 gives the
    /// unblocked (level-2) algorithm.
    Index panel_width = 64;
};

/// QR with column pivoting to k steps. Pivots are the trailing column of
/// largest 2-norm, ties to the lowest index; norms are downdated and
/// recomputed when cancellation is detected.
PivotedQRFactorization qrcp(const DenseMatrix& a, Index k, const QrcpOptions& options = {});

struct DominanceReport {
    bool holds = true;
    /// min over (i, j) of |r_ii| / ‖R(i:m, j)‖₂.
    double worst_ratio = 0.0;
    std::pair<Index, Index> witness{-1, -1};
};

/// Relative slack allowed when checking dominance in floating point.
inline constexpr double kDominanceSlack = 1e-10;

/// Checks |r_ii| ≥ factor·‖R(i:m, j)‖₂ for 0 ≤ i < steps, i < j < n.
DominanceReport check_dominance(const PivotedQRFactorization& f, double factor);

/// ‖AΠ − Q·R‖_F / ‖A‖_F.
double reconstruction_error(const PivotedQRFactorization& f, const DenseMatrix& a);

/// ‖R₂₂‖_F / ‖A‖_F; exactly 1 for a zero-step factorization.
double truncated_residual(const PivotedQRFactorization& f, const DenseMatrix& a);

/// ‖AΠ − Q·[R₁₁ R₁₂; 0]‖_F / ‖A‖_F, formed explicitly.
double truncated_residual_direct(const PivotedQRFactorization& f, const DenseMatrix& a);

}  // namespace srqr
