#include "srqr/random.hpp"

#include <cmath>
#include <numbers>

namespace srqr {

double GaussianStream::uniform() {
    // (k + 1) / 2^53 with k uniform on [0, 2^53): never zero, so log() is safe.
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

DenseMatrix GaussianStream::matrix(Index rows, Index cols) {
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) {
        v = next();
    }
    return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace srqr
