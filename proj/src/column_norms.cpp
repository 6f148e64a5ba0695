#include "srqr/column_norms.hpp"

#include <algorithm>
#include <utility>

namespace srqr {

ColumnNormTracker::ColumnNormTracker(std::vector<double> squared_norms)
    : current_(std::move(squared_norms)), reference_(current_), flagged_(current_.size(), false) {}

bool ColumnNormTracker::any_flagged() const noexcept {
    return std::find(flagged_.begin(), flagged_.end(), true) != flagged_.end();
}

bool ColumnNormTracker::downdate(Index j, double leaving_entry) {
    const auto k = static_cast<std::size_t>(j);
    const double updated = current_[k] - leaving_entry * leaving_entry;
    if (updated < kRecomputeFraction * reference_[k] || updated < 0.0) {
        current_[k] = std::max(updated, 0.0);
        flagged_[k] = reference_[k] > 0.0;
        return flagged_[k];
    }
    current_[k] = updated;
    return false;
}

void ColumnNormTracker::upgrade(Index j, double entering_entry) {
    const auto k = static_cast<std::size_t>(j);
    current_[k] += entering_entry * entering_entry;
    reference_[k] = std::max(reference_[k], current_[k]);
}

void ColumnNormTracker::reset(Index j, double squared_norm) {
    const auto k = static_cast<std::size_t>(j);
    current_[k] = squared_norm;
    reference_[k] = squared_norm;
    flagged_[k] = false;
}

void ColumnNormTracker::swap(Index a, Index b) noexcept {
    const auto x = static_cast<std::size_t>(a);
    const auto y = static_cast<std::size_t>(b);
    std::swap(current_[x], current_[y]);
    std::swap(reference_[x], reference_[y]);
    const bool fx = flagged_[x];
    flagged_[x] = flagged_[y];
    flagged_[y] = fx;
}

Index ColumnNormTracker::argmax(Index from) const {
    if (from < 0 || from >= size()) {
        throw DimensionError("argmax range empty");
    }
    Index best = from;
    for (Index j = from + 1; j < size(); ++j) {
        if (current_[static_cast<std::size_t>(j)] > current_[static_cast<std::size_t>(best)]) {
            best = j;
        }
    }
    return best;
}

}  // namespace srqr
