#include "srqr/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels.hpp"
#include "srqr/random.hpp"

namespace srqr {

void SketchConfig::validate(Index m) const {
    if (block_size < 1) {
        throw DimensionError("sketch block size must be at least 1");
    }
    if (oversample < 0) {
        throw DimensionError("oversampling size must be non-negative");
    }
    if (block_size + oversample > m) {
        throw DimensionError("sketch rows b+p=" + std::to_string(block_size + oversample) +
                             " exceed the row count m=" + std::to_string(m));
    }
}

SketchConfig SketchConfig::fitted_to(Index m) const {
    SketchConfig out = *this;
    out.oversample = std::clamp<Index>(out.oversample, 0, std::max<Index>(m - 1, 0));
    out.block_size = std::clamp<Index>(out.block_size, 1, std::max<Index>(m - out.oversample, 1));
    return out;
}

SketchState make_sketch(const DenseMatrix& a, const SketchConfig& cfg) {
    cfg.validate(a.rows());
    SketchState s;
    GaussianStream stream(cfg.seed);
    s.omega = stream.matrix(cfg.sketch_rows(), a.rows());
    s.b_mat = multiply(s.omega, a);
    if (cfg.update_rule == UpdateRule::Formula2) {
        s.omega_bar = s.omega;
    }
    s.flops.sketch = 2.0 * static_cast<double>(cfg.sketch_rows()) * static_cast<double>(a.rows()) *
                     static_cast<double>(a.cols());
    return s;
}

void update_formula1(SketchState& s, const DenseMatrix& r11, const DenseMatrix& r12) {
    const Index bb = r11.rows();
    const Index c0 = s.processed + bb;
    const Index ntrail = s.b_mat.cols() - c0;
    if (r11.cols() != bb || r12.rows() != bb || r12.cols() != ntrail || bb > s.b_mat.rows()) {
        throw DimensionError("update_formula1: panel dimensions do not match the sketch");
    }
    const double panel_norm = r11.frobenius_norm();
    for (Index i = 0; i < bb; ++i) {
        if (std::abs(r11(i, i)) <= 1e3 * kEpsilon * panel_norm) {
            throw NumericalError("update_formula1: R11 panel is numerically singular at diagonal " +
                                 std::to_string(i));
        }
    }
    DenseMatrix x = r12;
    solve_upper_in_place(r11, x);  // R₁₁⁻¹·R₁₂
    for (Index c = 0; c < ntrail; ++c) {
        for (Index i = 0; i < bb; ++i) {
            double s_ij = 0.0;
            for (Index t = i; t < bb; ++t) {
                s_ij += s.b_mat(i, s.processed + t) * x(t, c);
            }
            s.b_mat(i, c0 + c) -= s_ij;
        }
    }
    const double fb = static_cast<double>(bb);
    const double fn = static_cast<double>(ntrail);
    s.flops.sketch_update += 2.0 * fb * fb * fn + fb * fn;
    s.processed = c0;
}

void update_formula2(SketchState& s, const DenseMatrix& omega_bar1, const DenseMatrix& r12) {
    const Index bb = omega_bar1.cols();
    const Index c0 = s.processed + bb;
    const Index ntrail = s.b_mat.cols() - c0;
    if (omega_bar1.rows() != s.b_mat.rows() || r12.rows() != bb || r12.cols() != ntrail) {
        throw DimensionError("update_formula2: panel dimensions do not match the sketch");
    }
    kernels::gemm(kernels::Trans::No, kernels::Trans::No, -1.0, omega_bar1.view(), r12.view(), 1.0,
                  s.b_mat.view(0, c0, s.b_mat.rows(), ntrail));
    const double fs = static_cast<double>(s.b_mat.rows());
    const double fb = static_cast<double>(bb);
    const double fn = static_cast<double>(ntrail);
    s.flops.sketch_update += 2.0 * fs * fb * fn + fs * fn;
    s.processed = c0;
}

void absorb_panel(SketchState& s, const HouseholderSet& panel) {
    if (s.omega_bar.cols() != panel.rows()) {
        throw DimensionError("absorb_panel: reflector length differs from the sketch width");
    }
    panel.apply_right_in_place(s.omega_bar.view());
    const double fs = static_cast<double>(s.omega_bar.rows());
    const double fb = static_cast<double>(panel.count());
    const double fl = static_cast<double>(panel.rows() - panel.row_offset());
    s.flops.sketch_update += 4.0 * fs * fl * fb + fs * fb * fb;
}

Index min_oversampling(Index n, Index k, double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw DimensionError("min_oversampling: eps and delta must lie in (0, 1)");
    }
    if (n < 1 || k < 1) {
        throw DimensionError("min_oversampling: n and k must be positive");
    }
    const double c = 4.0 / (eps * eps - eps * eps * eps);
    const double p = std::ceil(c * std::log(2.0 * static_cast<double>(n) * static_cast<double>(k) / delta)) - 1.0;
    return std::max<Index>(0, static_cast<Index>(p));
}

double jl_failure_bound(Index r, double eps) {
    return 2.0 * std::exp(-(eps * eps - eps * eps * eps) * static_cast<double>(r) / 4.0);
}

bool jl_check(std::span<const double> x, const DenseMatrix& omega, double eps) {
    if (static_cast<Index>(x.size()) != omega.cols()) {
        throw DimensionError("jl_check: vector length differs from sketch width");
    }
    const Index r = omega.rows();
    double xx = 0.0;
    for (double v : x) {
        xx += v * v;
    }
    if (xx == 0.0) {
        return true;
    }
    double yy = 0.0;
    for (Index i = 0; i < r; ++i) {
        double s = 0.0;
        for (Index j = 0; j < omega.cols(); ++j) {
            s += omega(i, j) * x[static_cast<std::size_t>(j)];
        }
        yy += s * s;
    }
    yy /= static_cast<double>(r);
    return (1.0 - eps) * xx <= yy && yy <= (1.0 + eps) * xx;
}

}  // namespace srqr
