#pragma once

namespace srqr {

/// Analytic floating-point operation tallies, incremented by the kernels
/// that perform the work. Counts follow the usual dense conventions
/// (a multiply-add is two flops, a triangular solve with n right-hand
/// sides of order b costs b²·n).
struct FlopCounter {
    double sketch = 0.0;        // forming B = ΩA
    double panel_pivoting = 0.0;  // partial QRCP on the sketch
    double panel_qr = 0.0;
    double trailing_update = 0.0;
    double sketch_update = 0.0;  // updating B after each block

    double total() const noexcept {
        return sketch + panel_pivoting + panel_qr + trailing_update + sketch_update;
    }

    FlopCounter& operator+=(const FlopCounter& o) noexcept {
        sketch += o.sketch;
        panel_pivoting += o.panel_pivoting;
        panel_qr += o.panel_qr;
        trailing_update += o.trailing_update;
        sketch_update += o.sketch_update;
        return *this;
    }
};

}  // namespace srqr
