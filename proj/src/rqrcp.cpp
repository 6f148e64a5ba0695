#include "srqr/rqrcp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "factor_utils.hpp"
#include "kernels.hpp"

namespace srqr {

namespace {

void permute_tail(DenseMatrix& m, Index offset, const Permutation& local) {
    const DenseMatrix tail = m.block(0, offset, m.rows(), m.cols() - offset);
    m.set_block(0, offset, permute_columns(tail, local));
}

// Unpivoted Householder QR of W(i:m, i:i+bb) in place; returns the panel's
// reflectors as a full-length set with row offset i.
HouseholderSet factor_panel_in_place(DenseMatrix& w, Index i, Index bb, std::vector<double>& tau) {
    const Index m = w.rows();
    for (Index j = i; j < i + bb; ++j) {
        double* cj = w.col_ptr(j);
        tau[static_cast<std::size_t>(j)] = kernels::generate_reflector(cj[j], cj + j + 1, m - j - 1);
        if (j + 1 < i + bb) {
            kernels::apply_reflector_left(cj + j + 1, tau[static_cast<std::size_t>(j)],
                                          w.view(j, j + 1, m - j, i + bb - j - 1));
        }
    }
    DenseMatrix v(m, bb);
    for (Index t = 0; t < bb; ++t) {
        for (Index r = i + t + 1; r < m; ++r) {
            v(r, t) = w(r, i + t);
        }
    }
    return HouseholderSet(i, std::move(v),
                          std::vector<double>(tau.begin() + i, tau.begin() + i + bb));
}

}  // namespace

RQRCPResult rqrcp(const DenseMatrix& a, Index k, const SketchConfig& cfg) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (a.empty()) {
        throw DimensionError("rqrcp: empty matrix");
    }
    if (k < 1 || k > std::min(m, n)) {
        throw DimensionError("rqrcp: k=" + std::to_string(k) + " outside [1, min(m,n)]");
    }
    cfg.validate(m);

    RQRCPResult res;
    res.config = cfg;
    SketchState sketch = make_sketch(a, cfg);
    const Index srows = sketch.b_mat.rows();
    const double sketch_scale = sketch.b_mat.frobenius_norm();

    DenseMatrix w = a;
    Permutation pi = Permutation::identity(n);
    std::vector<double> tau(static_cast<std::size_t>(k), 0.0);
    FlopCounter flops = sketch.flops;
    Index steps = 0;
    Index achieved = 0;

    while (steps < k) {
        const Index i = steps;
        const Index bb = std::min(cfg.block_size, k - i);
        const DenseMatrix candidates = sketch.b_mat.block(0, i, srows, n - i);
        if (max_column_norm(candidates) <= 1e3 * kEpsilon * sketch_scale) {
            break;
        }

        // Pivots for this block from the sketch.
        PivotedQRFactorization local = qrcp(candidates, bb);
        flops.panel_pivoting += 4.0 * static_cast<double>(srows) * static_cast<double>(n - i) * static_cast<double>(bb);
        pi.compose_tail(i, local.pi);
        permute_tail(w, i, local.pi);
        if (cfg.update_rule == UpdateRule::Formula1) {
            sketch.b_mat.set_block(0, i, local.r);
        } else {
            sketch.b_mat.set_block(0, i, permute_columns(candidates, local.pi));
        }
        std::vector<Index> chosen;
        for (Index t = 0; t < bb; ++t) {
            chosen.push_back(pi[i + t]);
        }
        res.sketch_trace.push_back(std::move(chosen));

        // Panel QR and trailing update on A.
        const HouseholderSet panel = factor_panel_in_place(w, i, bb, tau);
        flops.panel_qr += 2.0 * static_cast<double>(bb * bb) * static_cast<double>(m - i);
        if (i + bb < n) {
            panel.apply_transpose_in_place(w.view(0, i + bb, m, n - i - bb));
            flops.trailing_update +=
                4.0 * static_cast<double>(m - i) * static_cast<double>(bb) * static_cast<double>(n - i - bb);
        }
        steps = i + bb;

        const DenseMatrix r11 = upper_part(w.block(i, i, bb, bb));
        const double panel_scale = r11.frobenius_norm();
        Index good = 0;
        while (good < bb && std::abs(r11(good, good)) > 1e3 * kEpsilon * panel_scale && panel_scale > 0.0) {
            ++good;
        }
        if (good < bb) {
            achieved = i + good;
            break;
        }
        achieved = steps;
        if (steps == n) {
            break;
        }

        const DenseMatrix r12 = w.block(i, i + bb, bb, n - i - bb);
        if (cfg.update_rule == UpdateRule::Formula1) {
            update_formula1(sketch, r11, r12);
        } else {
            absorb_panel(sketch, panel);
            update_formula2(sketch, sketch.omega_bar.block(0, i, srows, bb), r12);
        }
    }

    flops.sketch_update += sketch.flops.sketch_update;
    res.flops = flops;
    res.achieved_rank = achieved;
    res.trailing_sketch = sketch.b_mat.block(0, steps, srows, n - steps);
    res.factorization = detail::split_factored(std::move(w), std::move(tau), std::move(pi), steps);
    return res;
}

double truncated_residual(const RQRCPResult& res, const DenseMatrix& a) {
    return truncated_residual(res.factorization, a);
}

}  // namespace srqr
