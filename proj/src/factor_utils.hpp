#pragma once

#include <vector>

#include "srqr/pivoted_qr.hpp"

namespace srqr::detail {

/// Splits a LAPACK-style factored work array (R on and above the diagonal,
/// reflectors below it in the first `steps` columns) into a factorization.
inline PivotedQRFactorization split_factored(DenseMatrix w, std::vector<double> tau, Permutation pi, Index steps) {
    const Index m = w.rows();
    DenseMatrix v(m, steps);
    for (Index j = 0; j < steps; ++j) {
        for (Index i = j + 1; i < m; ++i) {
            v(i, j) = w(i, j);
            w(i, j) = 0.0;
        }
    }
    tau.resize(static_cast<std::size_t>(steps));
    PivotedQRFactorization f;
    f.q = OrthogonalFactor(HouseholderSet(0, std::move(v), std::move(tau)));
    f.r = std::move(w);
    f.pi = std::move(pi);
    f.steps = steps;
    return f;
}

}  // namespace srqr::detail
