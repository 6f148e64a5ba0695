#pragma once

#include <optional>
#include <vector>

#include "srqr/matrix.hpp"

namespace srqr {

struct SvdResult {
    std::vector<double> values;  // descending, length min(m, n)
    std::optional<DenseMatrix> u;  // m × min(m,n)
    std::optional<DenseMatrix> v;  // n × min(m,n)
};

struct SvdOptions {
    bool want_vectors = false;
    int max_sweeps = 80;
};

/// Desk-scale singular value oracle: one-sided (Hestenes) Jacobi on the
/// taller orientation of M, run until every column pair is orthogonal to
/// working precision. It shares no code with the QR drivers, so tests can
/// use it to check them.
///
/// Throws DimensionError above min(m,n) = 2000 and NumericalError if the
/// sweep limit is reached before every column pair is orthogonal.
SvdResult svd_oracle(const DenseMatrix& m, const SvdOptions& options = {});

inline std::vector<double> singular_values(const DenseMatrix& m) { return svd_oracle(m).values; }

/// Spectral norm through the oracle.
double spectral_norm(const DenseMatrix& m);

/// Best rank-k approximation U_k·Σ_k·V_kᵀ.
DenseMatrix truncated_svd(const DenseMatrix& m, Index k);

}  // namespace srqr
