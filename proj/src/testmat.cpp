#include "srqr/testmat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srqr/householder.hpp"
#include "srqr/random.hpp"

namespace srqr {

KahanSpec KahanSpec::standard(Index n, double c) {
    KahanSpec k;
    k.n = n;
    k.c = c;
    k.s = std::sqrt(0.9999 - c * c);
    return k;
}

void KahanSpec::validate() const {
    if (n < 1) {
        throw DimensionError("kahan: n must be positive");
    }
    if (!(c > 0.0 && c < 1.0) || !(s > 0.0) || s * s + c * c > 1.0 + 4 * kEpsilon) {
        throw DimensionError("kahan: need 0 < c < 1, s > 0 and s^2 + c^2 <= 1");
    }
}

DenseMatrix kahan(const KahanSpec& spec) {
    spec.validate();
    DenseMatrix k(spec.n, spec.n);
    double scale = 1.0;
    for (Index i = 0; i < spec.n; ++i) {
        k(i, i) = scale;
        for (Index j = i + 1; j < spec.n; ++j) {
            k(i, j) = -spec.c * scale;
        }
        scale *= spec.s;
    }
    return k;
}

DenseMatrix gaussian_matrix(Index m, Index n, std::uint64_t seed) {
    GaussianStream stream(seed);
    return stream.matrix(m, n);
}

DenseMatrix random_orthonormal(Index m, Index r, std::uint64_t seed) {
    if (r < 1 || r > m) {
        throw DimensionError("random_orthonormal: need 1 <= r <= m");
    }
    const HouseholderQR qr = householder_qr(gaussian_matrix(m, r, seed), r);
    DenseMatrix lead = DenseMatrix::identity(m, r);
    qr.q.apply_in_place(lead.view());
    // Fix signs so the distribution is Haar.
    for (Index j = 0; j < r; ++j) {
        if (qr.r(j, j) < 0.0) {
            for (Index i = 0; i < m; ++i) {
                lead(i, j) = -lead(i, j);
            }
        }
    }
    return lead;
}

DenseMatrix decaying_spectrum(Index m, Index n, std::span<const double> sigma, std::uint64_t seed) {
    const Index r = static_cast<Index>(sigma.size());
    if (r < 1 || r > std::min(m, n)) {
        throw DimensionError("decaying_spectrum: need 1 <= len(sigma) <= min(m,n), got " + std::to_string(r));
    }
    for (Index j = 0; j < r; ++j) {
        const double s = sigma[static_cast<std::size_t>(j)];
        if (!(s >= 0.0) || (j > 0 && s > sigma[static_cast<std::size_t>(j - 1)])) {
            throw DimensionError("decaying_spectrum: sigma must be nonnegative and non-increasing");
        }
    }
    DenseMatrix u = random_orthonormal(m, r, derive_seed(seed, 1));
    const DenseMatrix v = random_orthonormal(n, r, derive_seed(seed, 2));
    for (Index j = 0; j < r; ++j) {
        for (Index i = 0; i < m; ++i) {
            u(i, j) *= sigma[static_cast<std::size_t>(j)];
        }
    }
    return multiply(u, v.transpose());
}

DenseMatrix decaying_spectrum(Index m, Index n, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw DimensionError("decaying_spectrum: ratio must lie in (0, 1]");
    }
    std::vector<double> sigma(static_cast<std::size_t>(std::min(m, n)));
    double s = 1.0;
    for (double& v : sigma) {
        v = s;
        s *= ratio;
    }
    return decaying_spectrum(m, n, sigma, seed);
}

DenseMatrix random_low_rank(Index m, Index n, Index rank, std::uint64_t seed) {
    if (rank < 1 || rank > std::min(m, n)) {
        throw DimensionError("random_low_rank: rank out of range");
    }
    return multiply(gaussian_matrix(m, rank, derive_seed(seed, 1)), gaussian_matrix(rank, n, derive_seed(seed, 2)));
}

DenseMatrix kernel_matrix(Index n, Index dim, double bandwidth, KernelType type, std::uint64_t seed) {
    if (n < 1 || dim < 1 || !(bandwidth > 0.0)) {
        throw DimensionError("kernel_matrix: need n, dim >= 1 and a positive bandwidth");
    }
    GaussianStream stream(seed);
    DenseMatrix pts(dim, n);
    for (double& v : pts.data()) {
        v = stream.uniform();
    }
    DenseMatrix k(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = j; i < n; ++i) {
            double d2 = 0.0;
            for (Index t = 0; t < dim; ++t) {
                const double diff = pts(t, i) - pts(t, j);
                d2 += diff * diff;
            }
            const double v = type == KernelType::Gaussian ? std::exp(-d2 / (2.0 * bandwidth * bandwidth))
                                                          : std::exp(-std::sqrt(d2) / bandwidth);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

}  // namespace srqr
