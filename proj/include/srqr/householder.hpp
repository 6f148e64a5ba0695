#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "srqr/matrix.hpp"

namespace srqr {

/// Product H₁H₂⋯H_k of Householder reflectors Hⱼ = I − τⱼvⱼvⱼᵀ acting on
/// vectors of length `rows()`. Reflector j touches rows
/// [row_offset + j, rows); its unit leading entry is implicit and the
/// remaining entries live below the diagonal of `vectors`.
class HouseholderSet {
public:
    HouseholderSet() = default;
    HouseholderSet(Index row_offset, DenseMatrix vectors, std::vector<double> tau);

    Index rows() const noexcept { return vectors_.rows(); }
    Index count() const noexcept { return static_cast<Index>(tau_.size()); }
    Index row_offset() const noexcept { return row_offset_; }
    const DenseMatrix& vectors() const noexcept { return vectors_; }
    const std::vector<double>& tau() const noexcept { return tau_; }

    /// M ← Qᵀ·M, blocked (compact WY).
    void apply_transpose_in_place(MatrixView m) const;
    /// M ← Q·M.
    void apply_in_place(MatrixView m) const;
    /// M ← M·Q.
    void apply_right_in_place(MatrixView m) const;

private:
    ConstMatrixView packed() const noexcept;

    Index row_offset_ = 0;
    DenseMatrix vectors_;
    std::vector<double> tau_;
};

/// Plane rotation acting on rows (first, first + 1):
/// [x_a; x_b] ← [c s; −s c]·[x_a; x_b].
struct GivensRotation {
    Index row = 0;
    double c = 1.0;
    double s = 0.0;
};

/// The transpose Gᵀ of G = G_last⋯G_first, recorded so that restoring
/// triangular form after R ← G·R can be folded into Q ← Q·Gᵀ.
struct GivensSequence {
    std::vector<GivensRotation> rotations;
};

/// Orthogonal matrix kept as an ordered product of factors F₁F₂⋯F_t.
class OrthogonalFactor {
public:
    OrthogonalFactor() = default;
    explicit OrthogonalFactor(Index rows) : rows_(rows) {}
    explicit OrthogonalFactor(HouseholderSet set);

    Index rows() const noexcept { return rows_; }
    void append(HouseholderSet set);
    void append(GivensSequence seq);
    std::size_t factor_count() const noexcept { return factors_.size(); }

    void apply_transpose_in_place(MatrixView m) const;
    void apply_in_place(MatrixView m) const;

    /// Leading `cols` columns of Q (all of Q when cols < 0).
    DenseMatrix form(Index cols = -1) const;

private:
    Index rows_ = 0;
    std::vector<std::variant<HouseholderSet, GivensSequence>> factors_;
};

struct HouseholderQR {
    HouseholderSet q;
    /// Qᵀ·A: upper trapezoidal in its first k columns.
    DenseMatrix r;
};

/// Unpivoted Householder QR of the first k columns of A; the remaining
/// columns are overwritten with Qᵀ·A(:, k:n).
HouseholderQR householder_qr(const DenseMatrix& a, Index k);

DenseMatrix apply_q_transpose(const HouseholderSet& h, const DenseMatrix& m);
DenseMatrix apply_q(const HouseholderSet& h, const DenseMatrix& m);
DenseMatrix apply_q_transpose(const OrthogonalFactor& q, const DenseMatrix& m);
DenseMatrix apply_q(const OrthogonalFactor& q, const DenseMatrix& m);

/// Rotation zeroing `b` against `a`: c·a + s·b = r, −s·a + c·b = 0.
GivensRotation make_givens(Index row, double a, double b) noexcept;
void apply_givens(const GivensRotation& g, MatrixView m, Index col0 = 0);

struct GivensRestoreResult {
    DenseMatrix r;
    GivensSequence applied;  // rotations in application order
};

/// Restores upper-trapezoidal form after a round-robin column rotation
/// that moved column `start_col` to position `end_col`, leaving
/// subdiagonal entries in columns [start_col, end_col). Rotations act on
/// rows j, j+1 for j = start_col..end_col−1 and on every column to the
/// right, so norms of the implied QᵀAΠ are preserved.
///
/// `end_col` defaults to the last column whose subdiagonal entry is
/// nonzero. Throws NumericalError if nonzeros appear below the first
/// subdiagonal in that range.
GivensRestoreResult givens_restore(const DenseMatrix& r, Index start_col, Index end_col = -1);

/// In-place variant used by the SRQR swap loop.
GivensSequence givens_restore_in_place(DenseMatrix& r, Index start_col, Index end_col);

}  // namespace srqr
