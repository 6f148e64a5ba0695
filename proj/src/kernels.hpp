#pragma once

// Low-level dense kernels shared by the factorization drivers. All operate
// on column-major views; reflector blocks use the packed convention where
// the unit diagonal is implicit and entries above it are ignored.

#include <cmath>

#include "srqr/matrix.hpp"

namespace srqr::kernels {

enum class Trans { No, Yes };

/// C ← alpha·op(A)·op(B) + beta·C.
void gemm(Trans ta, Trans tb, double alpha, ConstMatrixView a, ConstMatrixView b, double beta, MatrixView c);

/// Generates a Householder reflector H = I − τ·v·vᵀ with Hᵀ·(alpha; x) = (beta; 0).
/// On return `alpha` holds beta and `x` holds v(1:) (v(0) = 1 implicit).
double generate_reflector(double& alpha, double* x, Index n);

/// C ← (I − τ·v·vᵀ)·C, v(0) = 1 implicit, v(1:) read from `v_tail`.
void apply_reflector_left(const double* v_tail, double tau, MatrixView c);

/// Triangular factor T of the compact WY form H₁⋯H_k = I − V·T·Vᵀ.
DenseMatrix form_block_factor(ConstMatrixView v, const double* tau);

/// C ← (I − V·T·Vᵀ)ᵀ·C.
void apply_block_left_transposed(ConstMatrixView v, const DenseMatrix& t, MatrixView c);
/// C ← (I − V·T·Vᵀ)·C.
void apply_block_left(ConstMatrixView v, const DenseMatrix& t, MatrixView c);
/// C ← C·(I − V·T·Vᵀ).
void apply_block_right(ConstMatrixView v, const DenseMatrix& t, MatrixView c);

/// Euclidean norm with scaling, robust to under/overflow.
double norm2(const double* x, Index n);

inline double dot(const double* x, const double* y, Index n) noexcept {
    double s = 0.0;
    for (Index i = 0; i < n; ++i) {
        s += x[i] * y[i];
    }
    return s;
}

}  // namespace srqr::kernels
