#pragma once

#include <vector>

#include "srqr/flops.hpp"
#include "srqr/pivoted_qr.hpp"
#include "srqr/sketch.hpp"

namespace srqr {

struct RQRCPResult {
    PivotedQRFactorization factorization;
    /// Original column indices chosen in each block, in pivot order.
    std::vector<std::vector<Index>> sketch_trace;
    FlopCounter flops;
    SketchConfig config;
    /// Steps actually performed; smaller than the target when the trailing
    /// sketch or a panel became numerically zero.
    Index achieved_rank = 0;
    /// Sketch of the trailing matrix after the final update, columns in
    /// the order of factorization.pi from position `factorization.steps`.
    DenseMatrix trailing_sketch;
};

/// Randomized QR with column pivoting to target rank k: pivots chosen by
/// partial QRCP on the Gaussian sketch B = ΩA, b at a time, with B kept a
/// sketch of the trailing matrix by the configured update rule.
RQRCPResult rqrcp(const DenseMatrix& a, Index k, const SketchConfig& cfg);

/// ‖R₂₂‖_F / ‖A‖_F of the RQRCP factorization.
double truncated_residual(const RQRCPResult& res, const DenseMatrix& a);

}  // namespace srqr
