#include "srqr/pivoted_qr.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "factor_utils.hpp"
#include "kernels.hpp"
#include "srqr/column_norms.hpp"

namespace srqr {

PivotedQRFactorization PivotedQRFactorization::unfactored(const DenseMatrix& a) {
    PivotedQRFactorization f;
    f.q = OrthogonalFactor(a.rows());
    f.r = a;
    f.pi = Permutation::identity(a.cols());
    f.steps = 0;
    return f;
}

namespace {

// One panel of the blocked algorithm (the LAPACK xLAQPS scheme). Columns
// [offset, n) of `w` are the trailing matrix; rows above `offset` are
// already final. Factors up to `nb` columns, stopping early when a norm
// downdate is flagged, and returns the number factored.
Index factor_panel(DenseMatrix& w, Index offset, Index nb, Permutation& pi, ColumnNormTracker& norms,
                   std::vector<double>& tau) {
    const Index m = w.rows();
    const Index n = w.cols();
    const Index ntrail = n - offset;
    DenseMatrix f(ntrail, nb);  // row c−offset holds column c's accumulated update
    Index kb = 0;
    bool recompute_pending = false;
    while (kb < nb && !recompute_pending) {
        const Index rk = offset + kb;
        const Index pvt = norms.argmax(rk);
        if (pvt != rk) {
            w.swap_columns(pvt, rk);
            for (Index t = 0; t < kb; ++t) {
                std::swap(f(pvt - offset, t), f(rk - offset, t));
            }
            pi.swap(pvt, rk);
            norms.swap(pvt, rk);
        }

        // Bring column rk up to date with the panel's earlier reflectors.
        for (Index r = rk; r < m; ++r) {
            double s = 0.0;
            for (Index t = 0; t < kb; ++t) {
                s += w(r, offset + t) * f(rk - offset, t);
            }
            w(r, rk) -= s;
        }

        double* ck = w.col_ptr(rk);
        const double tk = kernels::generate_reflector(ck[rk], ck + rk + 1, m - rk - 1);
        tau[static_cast<std::size_t>(rk)] = tk;
        const double diag = ck[rk];
        ck[rk] = 1.0;

        // F(c, kb) = τ·(A_c − V·F(c,:)ᵀ)ᵀ·v for the trailing columns c > rk.
        if (rk + 1 < n && tk != 0.0) {
            for (Index c = rk + 1; c < n; ++c) {
                f(c - offset, kb) = tk * kernels::dot(w.col_ptr(c) + rk, ck + rk, m - rk);
            }
            if (kb > 0) {
                std::vector<double> aux(static_cast<std::size_t>(kb));
                for (Index t = 0; t < kb; ++t) {
                    aux[static_cast<std::size_t>(t)] = -tk * kernels::dot(w.col_ptr(offset + t) + rk, ck + rk, m - rk);
                }
                for (Index c = rk + 1; c < n; ++c) {
                    double s = 0.0;
                    for (Index t = 0; t < kb; ++t) {
                        s += f(c - offset, t) * aux[static_cast<std::size_t>(t)];
                    }
                    f(c - offset, kb) += s;
                }
            }
        }

        // Row rk of the trailing columns becomes final.
        for (Index c = rk + 1; c < n; ++c) {
            double s = 0.0;
            for (Index t = 0; t <= kb; ++t) {
                s += w(rk, offset + t) * f(c - offset, t);
            }
            w(rk, c) -= s;
        }
        for (Index c = rk + 1; c < n; ++c) {
            if (norms.downdate(c, w(rk, c))) {
                recompute_pending = true;
            }
        }
        ck[rk] = diag;
        ++kb;
    }

    // Block update of the rows below the panel.
    const Index row0 = offset + kb;
    const Index col0 = offset + kb;
    if (row0 < m && col0 < n) {
        kernels::gemm(kernels::Trans::No, kernels::Trans::Yes, -1.0, w.view(row0, offset, m - row0, kb),
                      f.view(col0 - offset, 0, n - col0, kb), 1.0, w.view(row0, col0, m - row0, n - col0));
    }
    if (recompute_pending) {
        for (Index c = col0; c < n; ++c) {
            if (norms.needs_recompute(c)) {
                const double v = kernels::norm2(w.col_ptr(c) + row0, m - row0);
                norms.reset(c, v * v);
            }
        }
    }
    return kb;
}

}  // namespace

PivotedQRFactorization qrcp(const DenseMatrix& a, Index k, const QrcpOptions& options) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (a.empty()) {
        throw DimensionError("qrcp: empty matrix");
    }
    if (k < 1 || k > std::min(m, n)) {
        throw DimensionError("qrcp: k=" + std::to_string(k) + " outside [1, min(m,n)]");
    }
    if (options.panel_width < 1) {
        throw DimensionError("qrcp: panel width must be positive");
    }
    DenseMatrix w = a;
    Permutation pi = Permutation::identity(n);
    ColumnNormTracker norms(column_squared_norms(w));
    std::vector<double> tau(static_cast<std::size_t>(k), 0.0);

    Index done = 0;
    while (done < k) {
        const Index nb = std::min(options.panel_width, k - done);
        done += factor_panel(w, done, nb, pi, norms, tau);
    }
    return detail::split_factored(std::move(w), std::move(tau), std::move(pi), k);
}

DominanceReport check_dominance(const PivotedQRFactorization& f, double factor) {
    DominanceReport rep;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    const DenseMatrix& r = f.r;
    const Index m = r.rows();
    const Index n = r.cols();
    std::vector<double> tail(static_cast<std::size_t>(m + 1));
    for (Index j = 1; j < n; ++j) {
        // tail[i] = Σ_{l ≥ i} r_lj², accumulated bottom-up.
        tail[static_cast<std::size_t>(m)] = 0.0;
        for (Index i = m - 1; i >= 0; --i) {
            tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i + 1)] + r(i, j) * r(i, j);
        }
        for (Index i = 0; i < std::min(f.steps, j); ++i) {
            const double col = std::sqrt(tail[static_cast<std::size_t>(i)]);
            const double diag = std::abs(r(i, i));
            const double ratio = col > 0.0 ? diag / col : std::numeric_limits<double>::infinity();
            if (ratio < rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.witness = {i, j};
            }
            if (diag * (1.0 + kDominanceSlack) < factor * col) {
                rep.holds = false;
            }
        }
    }
    return rep;
}

double reconstruction_error(const PivotedQRFactorization& f, const DenseMatrix& a) {
    const DenseMatrix qr = apply_q(f.q, f.r);
    const double na = a.frobenius_norm();
    const double diff = subtract(permute_columns(a, f.pi), qr).frobenius_norm();
    return na > 0.0 ? diff / na : diff;
}

double truncated_residual(const PivotedQRFactorization& f, const DenseMatrix& a) {
    if (f.steps == 0) {
        return 1.0;
    }
    const double na = a.frobenius_norm();
    const double r22 = f.r22().frobenius_norm();
    return na > 0.0 ? r22 / na : r22;
}

double truncated_residual_direct(const PivotedQRFactorization& f, const DenseMatrix& a) {
    DenseMatrix top(f.r.rows(), f.r.cols());
    top.set_block(0, 0, f.r_tilde());
    const DenseMatrix approx = apply_q(f.q, top);
    const double na = a.frobenius_norm();
    const double diff = subtract(permute_columns(a, f.pi), approx).frobenius_norm();
    return na > 0.0 ? diff / na : diff;
}

}  // namespace srqr
