#pragma once

#include <cstdint>
#include <span>

#include "srqr/flops.hpp"
#include "srqr/householder.hpp"
#include "srqr/matrix.hpp"

namespace srqr {

enum class UpdateRule {
    /// Top rows become R̂₁₂ − R̂₁₁·R₁₁⁻¹·R₁₂, the rest keep R̂₂₂.
    Formula1,
    /// Trailing columns become B₂ − Ω̄₁·R₁₂ with Ω̄ = Ω·Q.
    Formula2,
};

struct SketchConfig {
    Index block_size = 64;
    Index oversample = 10;
    std::uint64_t seed = 0;
    UpdateRule update_rule = UpdateRule::Formula1;

    Index sketch_rows() const noexcept { return block_size + oversample; }
    /// Throws DimensionError unless b ≥ 1, p ≥ 0 and b + p ≤ m.
    void validate(Index m) const;
    /// Shrinks b (then p) so that b + p ≤ m; used for small inputs.
    SketchConfig fitted_to(Index m) const;
};

/// Gaussian sketch Ω ((b+p)×m) and compressed matrix B = Ω·A, updated in
/// place as the factorization advances. `processed` counts the columns of
/// A already factored; B's columns to the right of it sketch R₂₂.
struct SketchState {
    DenseMatrix omega;
    DenseMatrix b_mat;
    /// Ω·Q for the reflectors absorbed so far (formula 2 only).
    DenseMatrix omega_bar;
    Index processed = 0;
    FlopCounter flops;
};

/// Draws Ω from the seeded Gaussian stream and forms B = Ω·A.
SketchState make_sketch(const DenseMatrix& a, const SketchConfig& cfg);

/// Formula-1 update after a block of `r11.rows()` pivots. Expects
/// b_mat(0:bb, processed:) to hold (R̂₁₁ R̂₁₂) from the partial QRCP of
/// the sketch; overwrites the top bb rows of the trailing columns.
/// Throws NumericalError if a diagonal of R₁₁ is below 1e3·ε·‖R₁₁‖_F.
void update_formula1(SketchState& s, const DenseMatrix& r11, const DenseMatrix& r12);

/// Formula-2 update: B(:, processed+bb:) ← B₂ − Ω̄₁·R₁₂.
void update_formula2(SketchState& s, const DenseMatrix& omega_bar1, const DenseMatrix& r12);

/// Ω̄(:, offset:) ← Ω̄(:, offset:)·Q̃ for the panel reflectors (formula 2).
void absorb_panel(SketchState& s, const HouseholderSet& panel);

/// Smallest oversampling p with p ≥ ⌈4/(ε²−ε³)·ln(2nk/Δ)⌉ − 1.
Index min_oversampling(Index n, Index k, double eps, double delta);

/// Upper bound 2·exp(−(ε²−ε³)·r/4) on the probability that a fixed vector
/// violates the Johnson–Lindenstrauss condition under an r-row sketch.
double jl_failure_bound(Index r, double eps);

/// (1−ε)‖x‖² ≤ ‖Ωx/√r‖² ≤ (1+ε)‖x‖² with r = rows of Ω.
bool jl_check(std::span<const double> x, const DenseMatrix& omega, double eps);

}  // namespace srqr
