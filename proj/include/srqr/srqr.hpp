#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srqr/pivoted_qr.hpp"
#include "srqr/rqrcp.hpp"
#include "srqr/sketch.hpp"

namespace srqr {

/// Factorization used for the first l steps.
enum class InitialPivoting { Randomized, Classical };

struct SRQRConfig {
    Index k = 1;
    /// Working rank, l ≥ k.
    Index l = 1;
    /// Tolerance for g₂; must exceed 1.
    double g = 5.0;
    /// Rows of the Gaussian probe used to estimate g₂.
    Index d = 8;
    SketchConfig sketch{};
    InitialPivoting initial = InitialPivoting::Randomized;
    /// Swap cap; negative means 3·l.
    Index max_swaps = -1;
    /// Also compute g₂ exactly (O(l³)) for the diagnostics.
    bool exact_g2 = false;
    /// Form the rank-k SVD truncation R̃ₖ of R̃.
    bool compress = true;
    /// Fill τ, τ̂, τ̄ from the singular values of A (desk scale only).
    bool spectral_diagnostics = false;

    void validate(Index m, Index n) const;
    Index swap_cap() const noexcept { return max_swaps >= 0 ? max_swaps : 3 * l; }
};

struct SRQRDiagnostics {
    double g1 = 0.0;
    double g2_estimate = 0.0;
    std::optional<double> g2_exact;
    /// |α|: magnitude of the (l+1)-st diagonal after one extra pivot step.
    double alpha = 0.0;
    Index swaps = 0;
    /// Upper bounds on τ and τ̂ from g₁g₂ alone; always available.
    double tau_cap = 0.0;
    double tau_hat_cap = 0.0;
    std::optional<double> tau;
    std::optional<double> tau_hat;
    std::optional<double> tau_bar;
    bool certified = false;
    /// No trailing matrix or a numerically zero one: certification is
    /// vacuous and the τ family is undefined.
    bool degenerate = false;
    /// The swap cap was hit before g₂ ≤ g.
    bool swap_cap_exceeded = false;
    std::vector<double> g2_history;
};

struct TruncatedApproximation {
    OrthogonalFactor q;
    /// The leading l rows (R₁₁ R₁₂), l × n.
    DenseMatrix r_tilde;
    /// Rank-k SVD truncation of r_tilde (empty when compression is off).
    DenseMatrix r_tilde_k;
    Permutation pi;
    Index k = 0;

    /// Q·[R̃ₖ; 0]·Πᵀ, the rank-k approximation of A.
    DenseMatrix approximation() const;
};

struct SRQRResult {
    PivotedQRFactorization factorization;  // steps = l
    SRQRDiagnostics diagnostics;
    TruncatedApproximation truncated;
    FlopCounter flops;
};

/// Spectrum-revealing QR: RQRCP to l steps, then guarded swaps until the
/// estimated g₂ is at most g or the swap cap is reached.
SRQRResult srqr(const DenseMatrix& a, const SRQRConfig& cfg);

/// g₁ = ‖R₂₂‖₁,₂ / |α|. Returns 0 for a zero block and +∞ when α = 0 with
/// nonzero R₂₂.
double compute_g1(const DenseMatrix& r22, double alpha);

struct G2Estimate {
    double value = 0.0;
    /// Column of Ω·R̂⁻ᵀ with the largest norm: the swap candidate.
    Index argmax = 0;
};

/// (|α|/√d)·‖Ω·R̂⁻ᵀ‖₁,₂ for a d×(l+1) Gaussian Ω, via d triangular solves.
/// Throws NumericalError for a singular R̂.
G2Estimate estimate_g2(const DenseMatrix& r_hat, double alpha, Index d, std::uint64_t seed);

/// |α|·‖R̂⁻ᵀ‖₁,₂ computed from the explicit inverse.
double exact_g2(const DenseMatrix& r_hat, double alpha);

/// (1+c)^(n−1), the bound on ‖W⁻¹‖₁ for unit-diagonal triangular W with
/// off-diagonal magnitudes at most c.
double triangular_inverse_norm_bound(Index n, double c);

/// ‖W⁻¹‖₁ for a triangular W (upper or lower, detected from its zeros).
double triangular_inverse_one_norm(const DenseMatrix& w);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    /// rhs − lhs, scaled by rhs when rhs > 0.
    double slack = 0.0;
    /// Index j attaining the smallest slack for per-singular-value checks.
    Index worst_index = -1;
    /// False when the quantity is undefined (e.g. σ_{l+1}(A) numerically
    /// zero); such checks count as passing.
    bool evaluated = true;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    double tau = 0.0;
    double tau_hat = 0.0;
    double tau_bar = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    bool all_pass() const noexcept;
};

/// Relative tolerance applied to every bound comparison.
inline constexpr double kBoundTolerance = 1e-8;

/// Evaluates the singular-value and residual bounds for an l-step
/// factorization against A's spectrum (SVD oracle). Uses exact g₂ and the
/// pivot α = largest trailing column; independent of how Π was found.
BoundReport verify_bounds(const PivotedQRFactorization& f, const TruncatedApproximation& t, const DenseMatrix& a);

}  // namespace srqr
