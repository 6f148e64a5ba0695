#include "srqr/householder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels.hpp"

namespace srqr {

HouseholderSet::HouseholderSet(Index row_offset, DenseMatrix vectors, std::vector<double> tau)
    : row_offset_(row_offset), vectors_(std::move(vectors)), tau_(std::move(tau)) {
    if (vectors_.cols() != static_cast<Index>(tau_.size())) {
        throw DimensionError("reflector count does not match coefficient count");
    }
    if (row_offset_ < 0 || row_offset_ + count() > rows()) {
        throw DimensionError("reflectors do not fit below the row offset");
    }
}

ConstMatrixView HouseholderSet::packed() const noexcept {
    // Rows [row_offset, rows) with reflector j's implicit one at local row j.
    return vectors_.view(row_offset_, 0, rows() - row_offset_, count());
}

void HouseholderSet::apply_transpose_in_place(MatrixView m) const {
    if (m.rows != rows()) {
        throw DimensionError("apply_q_transpose: row dimensions differ");
    }
    if (count() == 0) {
        return;
    }
    const DenseMatrix t = kernels::form_block_factor(packed(), tau_.data());
    kernels::apply_block_left_transposed(packed(), t, m.sub(row_offset_, 0, rows() - row_offset_, m.cols));
}

void HouseholderSet::apply_in_place(MatrixView m) const {
    if (m.rows != rows()) {
        throw DimensionError("apply_q: row dimensions differ");
    }
    if (count() == 0) {
        return;
    }
    const DenseMatrix t = kernels::form_block_factor(packed(), tau_.data());
    kernels::apply_block_left(packed(), t, m.sub(row_offset_, 0, rows() - row_offset_, m.cols));
}

void HouseholderSet::apply_right_in_place(MatrixView m) const {
    if (m.cols != rows()) {
        throw DimensionError("apply_right: column dimension differs from reflector length");
    }
    if (count() == 0) {
        return;
    }
    const DenseMatrix t = kernels::form_block_factor(packed(), tau_.data());
    kernels::apply_block_right(packed(), t, m.sub(0, row_offset_, m.rows, rows() - row_offset_));
}

OrthogonalFactor::OrthogonalFactor(HouseholderSet set) : rows_(set.rows()) { factors_.emplace_back(std::move(set)); }

void OrthogonalFactor::append(HouseholderSet set) {
    if (set.rows() != rows_) {
        throw DimensionError("appended reflectors have the wrong length");
    }
    factors_.emplace_back(std::move(set));
}

void OrthogonalFactor::append(GivensSequence seq) {
    for (const auto& g : seq.rotations) {
        if (g.row < 0 || g.row + 1 >= rows_) {
            throw DimensionError("Givens rotation rows out of range");
        }
    }
    factors_.emplace_back(std::move(seq));
}

namespace {

void apply_givens_transposed(const GivensRotation& g, MatrixView m) {
    for (Index j = 0; j < m.cols; ++j) {
        const double a = m(g.row, j);
        const double b = m(g.row + 1, j);
        m(g.row, j) = g.c * a - g.s * b;
        m(g.row + 1, j) = g.s * a + g.c * b;
    }
}

}  // namespace

void OrthogonalFactor::apply_transpose_in_place(MatrixView m) const {
    if (m.rows != rows_) {
        throw DimensionError("apply_q_transpose: row dimensions differ");
    }
    // Qᵀ = F_tᵀ⋯F₁ᵀ, so F₁ᵀ acts first.
    for (const auto& f : factors_) {
        if (const auto* h = std::get_if<HouseholderSet>(&f)) {
            h->apply_transpose_in_place(m);
        } else {
            // Factor is Gᵀ; its transpose is G = G_last⋯G_first.
            for (const auto& g : std::get<GivensSequence>(f).rotations) {
                apply_givens(g, m);
            }
        }
    }
}

void OrthogonalFactor::apply_in_place(MatrixView m) const {
    if (m.rows != rows_) {
        throw DimensionError("apply_q: row dimensions differ");
    }
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        if (const auto* h = std::get_if<HouseholderSet>(&*it)) {
            h->apply_in_place(m);
        } else {
            const auto& rots = std::get<GivensSequence>(*it).rotations;
            for (auto g = rots.rbegin(); g != rots.rend(); ++g) {
                apply_givens_transposed(*g, m);
            }
        }
    }
}

DenseMatrix OrthogonalFactor::form(Index cols) const {
    if (cols < 0) {
        cols = rows_;
    }
    DenseMatrix q = DenseMatrix::identity(rows_, cols);
    apply_in_place(q.view());
    return q;
}

HouseholderQR householder_qr(const DenseMatrix& a, Index k) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (k < 1 || k > std::min(m, n)) {
        throw DimensionError("householder_qr: k=" + std::to_string(k) + " outside [1, min(m,n)]");
    }
    DenseMatrix w = a;
    std::vector<double> tau(static_cast<std::size_t>(k));
    for (Index j = 0; j < k; ++j) {
        double* cj = w.col_ptr(j);
        tau[static_cast<std::size_t>(j)] = kernels::generate_reflector(cj[j], cj + j + 1, m - j - 1);
        if (j + 1 < n) {
            kernels::apply_reflector_left(cj + j + 1, tau[static_cast<std::size_t>(j)],
                                          w.view(j, j + 1, m - j, n - j - 1));
        }
    }
    DenseMatrix v(m, k);
    for (Index j = 0; j < k; ++j) {
        for (Index i = j + 1; i < m; ++i) {
            v(i, j) = w(i, j);
            w(i, j) = 0.0;
        }
    }
    return {HouseholderSet(0, std::move(v), std::move(tau)), std::move(w)};
}

DenseMatrix apply_q_transpose(const HouseholderSet& h, const DenseMatrix& m) {
    DenseMatrix out = m;
    h.apply_transpose_in_place(out.view());
    return out;
}

DenseMatrix apply_q(const HouseholderSet& h, const DenseMatrix& m) {
    DenseMatrix out = m;
    h.apply_in_place(out.view());
    return out;
}

DenseMatrix apply_q_transpose(const OrthogonalFactor& q, const DenseMatrix& m) {
    DenseMatrix out = m;
    q.apply_transpose_in_place(out.view());
    return out;
}

DenseMatrix apply_q(const OrthogonalFactor& q, const DenseMatrix& m) {
    DenseMatrix out = m;
    q.apply_in_place(out.view());
    return out;
}

GivensRotation make_givens(Index row, double a, double b) noexcept {
    if (b == 0.0) {
        return {row, 1.0, 0.0};
    }
    const double r = std::hypot(a, b);
    return {row, a / r, b / r};
}

void apply_givens(const GivensRotation& g, MatrixView m, Index col0) {
    for (Index j = col0; j < m.cols; ++j) {
        const double a = m(g.row, j);
        const double b = m(g.row + 1, j);
        m(g.row, j) = g.c * a + g.s * b;
        m(g.row + 1, j) = -g.s * a + g.c * b;
    }
}

GivensSequence givens_restore_in_place(DenseMatrix& r, Index start_col, Index end_col) {
    const Index limit = std::min(r.rows() - 1, r.cols());
    if (start_col < 0 || end_col > limit || start_col > end_col) {
        throw DimensionError("givens_restore: column range invalid");
    }
    for (Index j = start_col; j < end_col; ++j) {
        for (Index i = j + 2; i < r.rows(); ++i) {
            if (r(i, j) != 0.0) {
                throw NumericalError("givens_restore: column " + std::to_string(j) +
                                     " has nonzeros below the first subdiagonal");
            }
        }
    }
    GivensSequence seq;
    for (Index j = start_col; j < end_col; ++j) {
        const GivensRotation g = make_givens(j, r(j, j), r(j + 1, j));
        apply_givens(g, r.view(), j);
        r(j + 1, j) = 0.0;
        seq.rotations.push_back(g);
    }
    return seq;
}

GivensRestoreResult givens_restore(const DenseMatrix& r, Index start_col, Index end_col) {
    if (end_col < 0) {
        end_col = start_col;
        const Index limit = std::min(r.rows() - 1, r.cols());
        for (Index j = start_col; j < limit; ++j) {
            if (r(j + 1, j) != 0.0) {
                end_col = j + 1;
            }
        }
    }
    GivensRestoreResult out{r, {}};
    out.applied = givens_restore_in_place(out.r, start_col, end_col);
    return out;
}

}  // namespace srqr
