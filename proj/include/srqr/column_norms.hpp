#pragma once

#include <vector>

#include "srqr/matrix.hpp"

namespace srqr {

/// Squared column norms of a shrinking trailing matrix, maintained by
/// downdating with the row that leaves it. A downdate that drops below
/// `recompute_fraction` of the last directly computed value (or turns
/// negative) is not trusted: the column is flagged and must be
/// recomputed from the matrix before it is used for pivoting again.
class ColumnNormTracker {
public:
    static constexpr double kRecomputeFraction = 1e-6;

    ColumnNormTracker() = default;
    /// Tracks the given squared norms; they are also the reference values.
    explicit ColumnNormTracker(std::vector<double> squared_norms);

    Index size() const noexcept { return static_cast<Index>(current_.size()); }
    double value(Index j) const noexcept { return current_[static_cast<std::size_t>(j)]; }
    bool needs_recompute(Index j) const noexcept { return flagged_[static_cast<std::size_t>(j)]; }
    bool any_flagged() const noexcept;

    /// r_j ← r_j − x²; returns true if the column became flagged.
    bool downdate(Index j, double leaving_entry);
    /// r_j ← r_j + x² (used when a row re-enters the trailing matrix).
    void upgrade(Index j, double entering_entry);
    /// Replaces the tracked value with a directly computed one.
    void reset(Index j, double squared_norm);

    void swap(Index a, Index b) noexcept;
    /// Lowest index of the maximum over positions [from, size()).
    Index argmax(Index from) const;

private:
    std::vector<double> current_;
    std::vector<double> reference_;
    std::vector<bool> flagged_;
};

}  // namespace srqr
