#include "srqr/srqr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kernels.hpp"
#include "srqr/column_norms.hpp"
#include "srqr/random.hpp"
#include "srqr/svd.hpp"

namespace srqr {

void SRQRConfig::validate(Index m, Index n) const {
    if (k < 1 || k > l || l > std::min(m, n)) {
        throw DimensionError("srqr: need 1 <= k <= l <= min(m,n), got k=" + std::to_string(k) +
                             " l=" + std::to_string(l));
    }
    if (!(g > 1.0)) {
        throw DimensionError("srqr: tolerance g must exceed 1");
    }
    if (d < 1) {
        throw DimensionError("srqr: d must be at least 1");
    }
}

DenseMatrix TruncatedApproximation::approximation() const {
    const DenseMatrix& top = r_tilde_k.empty() ? r_tilde : r_tilde_k;
    DenseMatrix full(q.rows(), top.cols());
    full.set_block(0, 0, top);
    q.apply_in_place(full.view());
    return unpermute_columns(full, pi);
}

double compute_g1(const DenseMatrix& r22, double alpha) {
    const double c = r22.empty() ? 0.0 : max_column_norm(r22);
    if (c == 0.0) {
        return 0.0;
    }
    if (alpha == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return c / std::abs(alpha);
}

namespace {

void require_nonsingular(const DenseMatrix& r_hat, const char* who) {
    if (r_hat.rows() != r_hat.cols() || r_hat.empty()) {
        throw DimensionError(std::string(who) + ": R_hat must be square and nonempty");
    }
    for (Index i = 0; i < r_hat.rows(); ++i) {
        if (r_hat(i, i) == 0.0) {
            throw NumericalError(std::string(who) + ": R_hat is singular at diagonal " + std::to_string(i));
        }
    }
}

// Largest row 2-norm of Y and the row attaining it (lowest index on ties).
std::pair<double, Index> max_row_norm(const DenseMatrix& y) {
    std::vector<double> sq(static_cast<std::size_t>(y.rows()), 0.0);
    for (Index j = 0; j < y.cols(); ++j) {
        for (Index i = 0; i < y.rows(); ++i) {
            sq[static_cast<std::size_t>(i)] += y(i, j) * y(i, j);
        }
    }
    Index best = 0;
    for (Index i = 1; i < y.rows(); ++i) {
        if (sq[static_cast<std::size_t>(i)] > sq[static_cast<std::size_t>(best)]) {
            best = i;
        }
    }
    return {std::sqrt(sq[static_cast<std::size_t>(best)]), best};
}

// Inverse of an upper triangular matrix.
DenseMatrix upper_inverse(const DenseMatrix& u) {
    DenseMatrix x = DenseMatrix::identity(u.rows());
    solve_upper_in_place(u, x);
    return x;
}

}  // namespace

G2Estimate estimate_g2(const DenseMatrix& r_hat, double alpha, Index d, std::uint64_t seed) {
    require_nonsingular(r_hat, "estimate_g2");
    if (d < 1) {
        throw DimensionError("estimate_g2: d must be at least 1");
    }
    GaussianStream stream(seed);
    // Rows of R̂⁻¹Ωᵀ are the columns of ΩR̂⁻ᵀ.
    DenseMatrix y = stream.matrix(d, r_hat.rows()).transpose();
    solve_upper_in_place(r_hat, y);
    const auto [norm, row] = max_row_norm(y);
    return {std::abs(alpha) / std::sqrt(static_cast<double>(d)) * norm, row};
}

double exact_g2(const DenseMatrix& r_hat, double alpha) {
    require_nonsingular(r_hat, "exact_g2");
    return std::abs(alpha) * max_row_norm(upper_inverse(r_hat)).first;
}

double triangular_inverse_norm_bound(Index n, double c) {
    if (n < 1 || c < 0.0) {
        throw DimensionError("triangular_inverse_norm_bound: need n >= 1 and c >= 0");
    }
    return std::pow(1.0 + c, static_cast<double>(n - 1));
}

double triangular_inverse_one_norm(const DenseMatrix& w) {
    const Index n = w.rows();
    if (n != w.cols()) {
        throw DimensionError("triangular_inverse_one_norm: matrix must be square");
    }
    bool upper = true;
    for (Index j = 0; j < n && upper; ++j) {
        for (Index i = j + 1; i < n; ++i) {
            if (w(i, j) != 0.0) {
                upper = false;
                break;
            }
        }
    }
    const DenseMatrix u = upper ? w : w.transpose();
    const DenseMatrix inv = upper_inverse(u);
    // ‖(Uᵀ)⁻¹‖₁ = ‖U⁻¹‖_∞.
    double best = 0.0;
    for (Index a = 0; a < n; ++a) {
        double s = 0.0;
        for (Index b = 0; b < n; ++b) {
            s += std::abs(upper ? inv(b, a) : inv(a, b));
        }
        best = std::max(best, s);
    }
    return best;
}

namespace {

struct SwapState {
    DenseMatrix r;
    OrthogonalFactor q;
    Permutation pi;
    ColumnNormTracker norms;
    Index l = 0;
};

// Householder step at column l of the trailing matrix; returns |R(l,l)|.
double extra_step(SwapState& st) {
    DenseMatrix& r = st.r;
    const Index m = r.rows();
    const Index n = r.cols();
    const Index l = st.l;
    double* cl = r.col_ptr(l);
    const double tau = kernels::generate_reflector(cl[l], cl + l + 1, m - l - 1);
    DenseMatrix v(m, 1);
    for (Index i = l + 1; i < m; ++i) {
        v(i, 0) = cl[i];
        cl[i] = 0.0;
    }
    if (l + 1 < n) {
        kernels::apply_reflector_left(v.col_ptr(0) + l + 1, tau, r.view(l, l + 1, m - l, n - l - 1));
    }
    st.q.append(HouseholderSet(l, std::move(v), {tau}));
    st.norms.reset(l, cl[l] * cl[l]);
    for (Index i = l + 1; i < n; ++i) {
        if (st.norms.downdate(i, r(l, i))) {
            const double nv = kernels::norm2(r.col_ptr(i) + l + 1, m - l - 1);
            st.norms.reset(i, nv * nv);
        }
    }
    return std::abs(cl[l]);
}

void pivot_to_boundary(SwapState& st) {
    const Index j = st.norms.argmax(st.l);
    if (j != st.l) {
        st.r.swap_columns(j, st.l);
        st.pi.swap(j, st.l);
        st.norms.swap(j, st.l);
    }
}

void rotate_columns_left(DenseMatrix& r, Index from, Index to) {
    const DenseMatrix moved = r.block(0, from, r.rows(), 1);
    for (Index j = from; j < to; ++j) {
        std::copy_n(r.col_ptr(j + 1), r.rows(), r.col_ptr(j));
    }
    std::copy_n(moved.col_ptr(0), r.rows(), r.col_ptr(to));
}

// Finishes an early-stopped factorization with unpivoted reflectors so that
// R₁₁ is upper triangular of order l.
void complete_unpivoted(PivotedQRFactorization& f, Index l) {
    const Index s = f.steps;
    if (s >= l) {
        return;
    }
    DenseMatrix& r = f.r;
    const Index m = r.rows();
    const Index n = r.cols();
    DenseMatrix v(m, l - s);
    std::vector<double> tau;
    for (Index j = s; j < l; ++j) {
        double* cj = r.col_ptr(j);
        const double t = kernels::generate_reflector(cj[j], cj + j + 1, m - j - 1);
        for (Index i = j + 1; i < m; ++i) {
            v(i, j - s) = cj[i];
            cj[i] = 0.0;
        }
        if (j + 1 < n) {
            kernels::apply_reflector_left(v.col_ptr(j - s) + j + 1, t, r.view(j, j + 1, m - j, n - j - 1));
        }
        tau.push_back(t);
    }
    // Reflector t of the set starts at row s + t, so the leading entry sits
    // at vectors(s + t, t), matching the packed convention.
    f.q.append(HouseholderSet(s, std::move(v), std::move(tau)));
    f.steps = l;
}

struct TauFamily {
    double tau = 0.0;
    double tau_hat = 0.0;
    double tau_bar = 0.0;
    bool tau_defined = false;
};

// τ, τ̂, τ̄ from their defining products; sigma_a and sigma_rt are the
// singular values of A and of R̃.
TauFamily tau_family(double g1, double g2, double r22_two, double r22_12, double rhat_inv_12, double r11_inv_12,
                     const std::vector<double>& sigma_a, const std::vector<double>& sigma_rt, Index k, Index l) {
    TauFamily out;
    const double ratio = r22_12 > 0.0 ? r22_two / r22_12 : 0.0;
    const double sig_l1 = l < static_cast<Index>(sigma_a.size()) ? sigma_a[static_cast<std::size_t>(l)] : 0.0;
    const double floor = 1e3 * kEpsilon * (sigma_a.empty() ? 0.0 : sigma_a.front());
    if (r22_two == 0.0) {
        out.tau_defined = true;
    } else if (sig_l1 > floor && rhat_inv_12 > 0.0) {
        out.tau = g1 * g2 * ratio / rhat_inv_12 / sig_l1;
        out.tau_defined = true;
    }
    const double sig_l_rt = sigma_rt[static_cast<std::size_t>(l - 1)];
    const double sig_k_rt = sigma_rt[static_cast<std::size_t>(k - 1)];
    if (r11_inv_12 > 0.0 && sig_l_rt > 0.0) {
        out.tau_hat = g1 * g2 * ratio / r11_inv_12 / sig_l_rt;
    }
    out.tau_bar = sig_k_rt > 0.0 ? out.tau_hat * sig_l_rt / sig_k_rt : 0.0;
    return out;
}

}  // namespace

SRQRResult srqr(const DenseMatrix& a, const SRQRConfig& cfg) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (a.empty()) {
        throw DimensionError("srqr: empty matrix");
    }
    cfg.validate(m, n);
    const Index l = cfg.l;

    RQRCPResult base;
    if (cfg.initial == InitialPivoting::Randomized) {
        base = rqrcp(a, l, cfg.sketch.fitted_to(m));
    } else {
        base.factorization = qrcp(a, l);
        base.achieved_rank = l;
    }
    PivotedQRFactorization f = base.factorization;
    complete_unpivoted(f, l);

    SRQRResult out;
    out.flops = base.flops;
    SRQRDiagnostics& diag = out.diagnostics;

    if (l == n || l == m) {
        diag.degenerate = true;
        diag.certified = true;
    } else {
        SwapState st{std::move(f.r), std::move(f.q), std::move(f.pi), {}, l};
        // Trailing norms start from the sketch when it is current, scaled by
        // 1/(b+p); otherwise from R₂₂ directly.
        std::vector<double> init(static_cast<std::size_t>(n), 0.0);
        if (base.factorization.steps == l && base.trailing_sketch.cols() == n - l) {
            const std::vector<double> sk = column_squared_norms(base.trailing_sketch);
            const double scale = 1.0 / static_cast<double>(base.trailing_sketch.rows());
            for (Index i = l; i < n; ++i) {
                init[static_cast<std::size_t>(i)] = sk[static_cast<std::size_t>(i - l)] * scale;
            }
        } else {
            const std::vector<double> exact = column_squared_norms(st.r, l);
            std::copy(exact.begin() + l, exact.end(), init.begin() + l);
        }
        st.norms = ColumnNormTracker(std::move(init));

        pivot_to_boundary(st);
        diag.alpha = extra_step(st);

        Index iteration = 0;
        auto estimate = [&]() -> G2Estimate {
            const DenseMatrix r_hat = st.r.block(0, 0, l + 1, l + 1);
            return estimate_g2(r_hat, diag.alpha, cfg.d, derive_seed(cfg.sketch.seed, 0x5352u + iteration++));
        };

        bool singular = diag.alpha == 0.0;
        G2Estimate est{};
        if (!singular) {
            try {
                est = estimate();
            } catch (const NumericalError&) {
                singular = true;
            }
        }
        if (singular) {
            diag.degenerate = true;
            diag.certified = true;
        } else {
            diag.g2_history.push_back(est.value);
            while (est.value > cfg.g && diag.swaps < cfg.swap_cap()) {
                const Index pick = est.argmax;
                if (pick < l) {
                    rotate_columns_left(st.r, pick, l);
                    st.pi.rotate_left(pick, l);
                    st.q.append(givens_restore_in_place(st.r, pick, l));
                }
                // Row l re-enters the trailing matrix.
                st.norms.reset(l, st.r(l, l) * st.r(l, l));
                for (Index i = l + 1; i < n; ++i) {
                    st.norms.upgrade(i, st.r(l, i));
                }
                pivot_to_boundary(st);
                diag.alpha = extra_step(st);
                ++diag.swaps;
                if (diag.alpha == 0.0) {
                    est.value = 0.0;
                    diag.degenerate = true;
                    break;
                }
                est = estimate();
                diag.g2_history.push_back(est.value);
            }
            diag.g2_estimate = est.value;
            diag.certified = est.value <= cfg.g;
            diag.swap_cap_exceeded = !diag.certified;
        }
        f.r = std::move(st.r);
        f.q = std::move(st.q);
        f.pi = std::move(st.pi);
    }
    f.steps = l;

    const DenseMatrix r22 = f.r22();
    if (!diag.degenerate) {
        diag.g1 = compute_g1(r22, diag.alpha);
        const DenseMatrix r_hat = f.r.block(0, 0, l + 1, l + 1);
        const double g2 = cfg.exact_g2 ? exact_g2(r_hat, diag.alpha) : diag.g2_estimate;
        if (cfg.exact_g2) {
            diag.g2_exact = g2;
        }
        diag.tau_cap = diag.g1 * g2 * std::sqrt(static_cast<double>((l + 1) * (n - l)));
        diag.tau_hat_cap = diag.g1 * g2 * std::sqrt(static_cast<double>(l * (n - l)));
    }

    TruncatedApproximation& t = out.truncated;
    t.q = f.q;
    t.r_tilde = f.r_tilde();
    t.pi = f.pi;
    t.k = cfg.k;
    if (cfg.compress) {
        t.r_tilde_k = truncated_svd(t.r_tilde, cfg.k);
    }

    if (cfg.spectral_diagnostics && !diag.degenerate) {
        const std::vector<double> sigma_a = singular_values(a);
        const std::vector<double> sigma_rt = singular_values(t.r_tilde);
        const DenseMatrix r_hat = f.r.block(0, 0, l + 1, l + 1);
        const double g2 = diag.g2_exact.value_or(diag.g2_estimate);
        const DenseMatrix r11_inv = upper_inverse(f.r11());
        const TauFamily tf =
            tau_family(diag.g1, g2, spectral_norm(r22), max_column_norm(r22),
                       max_row_norm(upper_inverse(r_hat)).first, max_row_norm(r11_inv).first, sigma_a, sigma_rt,
                       cfg.k, l);
        if (tf.tau_defined) {
            diag.tau = tf.tau;
        }
        diag.tau_hat = tf.tau_hat;
        diag.tau_bar = tf.tau_bar;
    }

    out.factorization = std::move(f);
    return out;
}

bool BoundReport::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

namespace {

BoundCheck make_check(std::string name, double lhs, double rhs, double scale) {
    BoundCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.pass = lhs <= rhs + kBoundTolerance * std::max(std::abs(rhs), scale);
    c.slack = rhs > 0.0 ? (rhs - lhs) / rhs : rhs - lhs;
    return c;
}

// Per-index family: keeps the entry with the smallest slack.
BoundCheck worst_of(std::string name, const std::vector<double>& lhs, const std::vector<double>& rhs, double scale) {
    BoundCheck worst = make_check(name, 0.0, 0.0, scale);
    bool first = true;
    for (std::size_t j = 0; j < lhs.size(); ++j) {
        BoundCheck c = make_check(name, lhs[j], rhs[j], scale);
        c.worst_index = static_cast<Index>(j);
        if (first || (!c.pass && worst.pass) || (c.pass == worst.pass && c.slack < worst.slack)) {
            worst = c;
            first = false;
        }
    }
    return worst;
}

BoundCheck skipped(std::string name) {
    BoundCheck c;
    c.name = std::move(name);
    c.evaluated = false;
    return c;
}

}  // namespace

BoundReport verify_bounds(const PivotedQRFactorization& f, const TruncatedApproximation& t, const DenseMatrix& a) {
    const Index m = a.rows();
    const Index n = a.cols();
    const Index l = f.steps;
    const Index k = t.k;
    if (f.r.rows() != m || f.r.cols() != n) {
        throw DimensionError("verify_bounds: factorization does not match A");
    }
    if (k < 1 || k > l) {
        throw DimensionError("verify_bounds: need 1 <= k <= steps");
    }

    const std::vector<double> sigma_a = singular_values(a);
    const DenseMatrix r_tilde = f.r_tilde();
    const std::vector<double> sigma_rt = singular_values(r_tilde);
    const DenseMatrix r22 = f.r22();
    const double r22_two = r22.empty() ? 0.0 : spectral_norm(r22);
    const double s1 = sigma_a.front();
    auto sigma = [&](Index j) {  // σ_{j+1}, zero past the end
        return j < static_cast<Index>(sigma_a.size()) ? sigma_a[static_cast<std::size_t>(j)] : 0.0;
    };

    BoundReport rep;

    // One exact pivot step on R₂₂ gives α and the column a above it.
    bool have_g = false;
    double r22_12 = 0.0;
    double rhat_inv_12 = 0.0;
    if (!r22.empty()) {
        const std::vector<double> cn = column_squared_norms(r22);
        const auto best = std::max_element(cn.begin(), cn.end());
        r22_12 = std::sqrt(*best);
        if (r22_12 > 0.0) {
            const Index jstar = l + static_cast<Index>(best - cn.begin());
            DenseMatrix r_hat(l + 1, l + 1);
            r_hat.set_block(0, 0, f.r11());
            for (Index i = 0; i < l; ++i) {
                r_hat(i, l) = f.r(i, jstar);
            }
            r_hat(l, l) = r22_12;
            bool ok = true;
            for (Index i = 0; i < l; ++i) {
                ok = ok && f.r(i, i) != 0.0;
            }
            if (ok) {
                rhat_inv_12 = max_row_norm(upper_inverse(r_hat)).first;
                rep.g1 = 1.0;
                rep.g2 = r22_12 * rhat_inv_12;
                have_g = true;
            }
        }
    }

    double r11_inv_12 = 0.0;
    {
        const DenseMatrix r11 = f.r11();
        bool ok = true;
        for (Index i = 0; i < l; ++i) {
            ok = ok && r11(i, i) != 0.0;
        }
        if (ok) {
            r11_inv_12 = max_row_norm(upper_inverse(r11)).first;
        }
    }

    const TauFamily tf = tau_family(rep.g1, rep.g2, r22_two, r22_12, rhat_inv_12, r11_inv_12, sigma_a, sigma_rt, k, l);
    rep.tau = tf.tau;
    rep.tau_hat = tf.tau_hat;
    rep.tau_bar = tf.tau_bar;

    // σ_j²(A) ≤ σ_j²(R̃) + ‖R₂₂‖₂².
    {
        std::vector<double> lhs;
        std::vector<double> rhs;
        for (Index j = 0; j < k; ++j) {
            const double sr = sigma_rt[static_cast<std::size_t>(j)];
            lhs.push_back(sigma(j) * sigma(j));
            rhs.push_back(sr * sr + r22_two * r22_two);
        }
        rep.checks.push_back(worst_of("interlacing_with_trailing_norm", lhs, rhs, s1 * s1));
    }

    // Residual of the rank-k approximation, formed explicitly.
    const double sk1 = sigma(k);
    const double sl1 = sigma(l);
    double resid = 0.0;
    {
        TruncatedApproximation tt = t;
        if (tt.r_tilde_k.empty()) {
            tt.r_tilde_k = truncated_svd(r_tilde, k);
        }
        resid = spectral_norm(subtract(a, tt.approximation()));
    }
    rep.checks.push_back(make_check("residual_vs_trailing_norm", resid,
                                    std::sqrt(sk1 * sk1 + r22_two * r22_two), s1));
    if (tf.tau_defined) {
        rep.checks.push_back(make_check("residual_vs_tau", resid,
                                        std::sqrt(sk1 * sk1 + tf.tau * tf.tau * sl1 * sl1), s1));
    } else {
        rep.checks.push_back(skipped("residual_vs_tau"));
    }

    // σ_j(R̃) ≥ σ_j(A)/√(1+τ̄²) and the min form, written as lhs ≤ rhs.
    if (r11_inv_12 > 0.0) {
        std::vector<double> lhs;
        std::vector<double> rhs;
        std::vector<double> lhs_min;
        for (Index j = 0; j < k; ++j) {
            const double sr = sigma_rt[static_cast<std::size_t>(j)];
            lhs.push_back(sigma(j) / std::sqrt(1.0 + tf.tau_bar * tf.tau_bar));
            rhs.push_back(sr);
            const double ratio = sigma(j) > 0.0 ? sl1 / sigma(j) : 0.0;
            const double tb2 = tf.tau_bar * tf.tau_bar;
            const double frac =
                std::max(1.0 / std::sqrt(1.0 + tb2),
                         tf.tau_defined ? 1.0 / std::sqrt(1.0 + tf.tau * tf.tau * (1.0 + tb2) * ratio * ratio) : 0.0);
            lhs_min.push_back(sigma(j) * frac);
        }
        rep.checks.push_back(worst_of("spectrum_capture_tau_bar", lhs, rhs, s1));
        rep.checks.push_back(worst_of("spectrum_capture_min_form", lhs_min, rhs, s1));
    } else {
        rep.checks.push_back(skipped("spectrum_capture_tau_bar"));
        rep.checks.push_back(skipped("spectrum_capture_min_form"));
    }

    if (have_g && tf.tau_defined) {
        rep.checks.push_back(make_check("tau_dimension_cap", tf.tau,
                                        rep.g1 * rep.g2 * std::sqrt(static_cast<double>((l + 1) * (n - l))), 0.0));
    } else {
        rep.checks.push_back(skipped("tau_dimension_cap"));
    }
    if (have_g && r11_inv_12 > 0.0) {
        rep.checks.push_back(make_check("tau_hat_dimension_cap", tf.tau_hat,
                                        rep.g1 * rep.g2 * std::sqrt(static_cast<double>(l * (n - l))), 0.0));
    } else {
        rep.checks.push_back(skipped("tau_hat_dimension_cap"));
    }
    return rep;
}

}  // namespace srqr
