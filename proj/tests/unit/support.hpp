#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "srqr/matrix.hpp"

namespace srqr::test {

// Reference kernels written the slow, obvious way. They never call into
// the library beyond element access.

inline DenseMatrix naive_multiply(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.cols(); ++j) {
            long double s = 0.0L;
            for (Index t = 0; t < a.cols(); ++t) {
                s += static_cast<long double>(a(i, t)) * b(t, j);
            }
            c(i, j) = static_cast<double>(s);
        }
    }
    return c;
}

inline double naive_frobenius(const DenseMatrix& a) {
    long double s = 0.0L;
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            s += static_cast<long double>(a(i, j)) * a(i, j);
        }
    }
    return static_cast<double>(std::sqrt(s));
}

inline double diff_norm(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix d(a.rows(), a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            d(i, j) = a(i, j) - b(i, j);
        }
    }
    return naive_frobenius(d);
}

inline bool is_upper_trapezoidal(const DenseMatrix& r, Index cols, double tol) {
    for (Index j = 0; j < cols; ++j) {
        for (Index i = j + 1; i < r.rows(); ++i) {
            if (std::abs(r(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

struct ReferenceQrcp {
    std::vector<Index> perm;
    std::vector<double> diag;
};

// QR with column pivoting by modified Gram–Schmidt with reorthogonalisation,
// recomputing every trailing norm from scratch at each step.
inline ReferenceQrcp reference_qrcp(const DenseMatrix& a, Index k) {
    const Index m = a.rows();
    const Index n = a.cols();
    DenseMatrix w = a;
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        perm[static_cast<std::size_t>(j)] = j;
    }
    ReferenceQrcp out;
    for (Index step = 0; step < k; ++step) {
        Index best = step;
        double best_norm = -1.0;
        for (Index j = step; j < n; ++j) {
            long double s = 0.0L;
            for (Index i = 0; i < m; ++i) {
                s += static_cast<long double>(w(i, j)) * w(i, j);
            }
            if (static_cast<double>(s) > best_norm) {
                best_norm = static_cast<double>(s);
                best = j;
            }
        }
        w.swap_columns(step, best);
        std::swap(perm[static_cast<std::size_t>(step)], perm[static_cast<std::size_t>(best)]);
        std::vector<double> q(static_cast<std::size_t>(m));
        const double nrm = std::sqrt(best_norm);
        out.diag.push_back(nrm);
        for (Index i = 0; i < m; ++i) {
            q[static_cast<std::size_t>(i)] = nrm > 0.0 ? w(i, step) / nrm : 0.0;
        }
        for (Index j = step + 1; j < n; ++j) {
            for (int pass = 0; pass < 2; ++pass) {
                double d = 0.0;
                for (Index i = 0; i < m; ++i) {
                    d += q[static_cast<std::size_t>(i)] * w(i, j);
                }
                for (Index i = 0; i < m; ++i) {
                    w(i, j) -= d * q[static_cast<std::size_t>(i)];
                }
            }
        }
    }
    out.perm = std::move(perm);
    return out;
}

}  // namespace srqr::test
