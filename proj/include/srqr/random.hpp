#pragma once

#include <cstdint>
#include <random>

#include "srqr/matrix.hpp"

namespace srqr {

/// Standard normal variates from std::mt19937_64 through the
/// Box–Muller transform. mt19937_64 is fully specified by the standard and
/// the transform is written out here, so a seed reproduces the same stream
/// on every conforming platform (std::normal_distribution does not).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next();
    /// Uniform on (0, 1], 53 random bits.
    double uniform();

    DenseMatrix matrix(Index rows, Index cols);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derives an independent stream seed for a numbered sub-task
/// (SplitMix64 finalizer over seed ⊕ stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace srqr
