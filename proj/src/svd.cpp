#include "srqr/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kernels.hpp"

namespace srqr {

SvdResult svd_oracle(const DenseMatrix& m, const SvdOptions& options) {
    const bool wide = m.rows() < m.cols();
    DenseMatrix g = wide ? m.transpose() : m;
    const Index rows = g.rows();
    const Index n = g.cols();
    if (n > 2000) {
        throw DimensionError("svd_oracle is limited to min(m,n) <= 2000");
    }
    DenseMatrix v = options.want_vectors ? DenseMatrix::identity(n) : DenseMatrix();
    const double tol = kEpsilon * std::sqrt(static_cast<double>(std::max<Index>(rows, 1)));

    bool converged = n <= 1;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                double* gp = g.col_ptr(p);
                double* gq = g.col_ptr(q);
                const double a = kernels::dot(gp, gp, rows);
                const double b = kernels::dot(gq, gq, rows);
                const double c = kernels::dot(gp, gq, rows);
                if (a == 0.0 || b == 0.0 || std::abs(c) <= tol * std::sqrt(a) * std::sqrt(b)) {
                    continue;
                }
                converged = false;
                const double zeta = (b - a) / (2.0 * c);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (Index k = 0; k < rows; ++k) {
                    const double x = gp[k];
                    gp[k] = cs * x - sn * gq[k];
                    gq[k] = sn * x + cs * gq[k];
                }
                if (options.want_vectors) {
                    double* vp = v.col_ptr(p);
                    double* vq = v.col_ptr(q);
                    for (Index k = 0; k < n; ++k) {
                        const double x = vp[k];
                        vp[k] = cs * x - sn * vq[k];
                        vq[k] = sn * x + cs * vq[k];
                    }
                }
            }
        }
    }
    if (!converged) {
        throw NumericalError("svd_oracle did not converge within " + std::to_string(options.max_sweeps) +
                             " sweeps");
    }

    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        sigma[static_cast<std::size_t>(j)] = kernels::norm2(g.col_ptr(j), rows);
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
        return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
    });

    SvdResult out;
    out.values.reserve(static_cast<std::size_t>(n));
    for (Index j : order) {
        out.values.push_back(sigma[static_cast<std::size_t>(j)]);
    }
    if (options.want_vectors) {
        DenseMatrix left(rows, n);
        DenseMatrix right(n, n);
        for (Index jj = 0; jj < n; ++jj) {
            const Index j = order[static_cast<std::size_t>(jj)];
            const double s = sigma[static_cast<std::size_t>(j)];
            for (Index k = 0; k < rows; ++k) {
                left(k, jj) = s > 0.0 ? g(k, j) / s : 0.0;
            }
            for (Index k = 0; k < n; ++k) {
                right(k, jj) = v(k, j);
            }
        }
        if (wide) {
            out.u = std::move(right);
            out.v = std::move(left);
        } else {
            out.u = std::move(left);
            out.v = std::move(right);
        }
    }
    return out;
}

double spectral_norm(const DenseMatrix& m) {
    if (m.empty()) {
        return 0.0;
    }
    return svd_oracle(m).values.front();
}

DenseMatrix truncated_svd(const DenseMatrix& m, Index k) {
    const SvdResult s = svd_oracle(m, {.want_vectors = true});
    k = std::clamp<Index>(k, 0, static_cast<Index>(s.values.size()));
    DenseMatrix out(m.rows(), m.cols());
    const DenseMatrix& u = *s.u;
    const DenseMatrix& v = *s.v;
    for (Index t = 0; t < k; ++t) {
        const double sig = s.values[static_cast<std::size_t>(t)];
        for (Index j = 0; j < m.cols(); ++j) {
            const double f = sig * v(j, t);
            if (f == 0.0) {
                continue;
            }
            for (Index i = 0; i < m.rows(); ++i) {
                out(i, j) += u(i, t) * f;
            }
        }
    }
    return out;
}

}  // namespace srqr
