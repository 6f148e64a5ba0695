#pragma once

#include <cstdint>
#include <span>

#include "srqr/matrix.hpp"

namespace srqr {

/// Upper-triangular Kahan matrix K_ii = s^(i−1), K_ij = −c·s^(i−1) (j > i).
struct KahanSpec {
    Index n = 1;
    double c = 0.285;
    double s = 0.0;

    /// s = sqrt(0.9999 − c²), the usual slightly perturbed choice.
    static KahanSpec standard(Index n, double c = 0.285);
    void validate() const;
};

DenseMatrix kahan(const KahanSpec& spec);

/// m×r matrix with orthonormal columns from the QR of a seeded Gaussian.
DenseMatrix random_orthonormal(Index m, Index r, std::uint64_t seed);

/// U·diag(σ)·Vᵀ with seeded random orthonormal U (m×r) and V (n×r),
/// r = σ.size() ≤ min(m, n). σ must be nonnegative and non-increasing.
DenseMatrix decaying_spectrum(Index m, Index n, std::span<const double> sigma, std::uint64_t seed);

/// Geometric spectrum σ_j = ratio^j, j = 0..min(m,n)−1.
DenseMatrix decaying_spectrum(Index m, Index n, double ratio, std::uint64_t seed);

/// G₁·G₂ with Gaussian G₁ (m×rank) and G₂ (rank×n).
DenseMatrix random_low_rank(Index m, Index n, Index rank, std::uint64_t seed);

/// Dense m×n matrix of independent standard normals.
DenseMatrix gaussian_matrix(Index m, Index n, std::uint64_t seed);

enum class KernelType { Gaussian, Laplacian };

/// n×n SPD kernel matrix over n seeded points uniform in [0,1]^dim:
/// exp(−‖x−y‖²/(2h²)) or exp(−‖x−y‖/h).
DenseMatrix kernel_matrix(Index n, Index dim, double bandwidth, KernelType type, std::uint64_t seed);

}  // namespace srqr
