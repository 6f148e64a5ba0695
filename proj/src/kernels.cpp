#include "kernels.hpp"

#include <algorithm>
#include <vector>

namespace srqr::kernels {

void gemm(Trans ta, Trans tb, double alpha, ConstMatrixView a, ConstMatrixView b, double beta, MatrixView c) {
    const Index m = c.rows;
    const Index n = c.cols;
    const Index inner = (ta == Trans::No) ? a.cols : a.rows;
    if (beta != 1.0) {
        for (Index j = 0; j < n; ++j) {
            double* cj = c.col_ptr(j);
            for (Index i = 0; i < m; ++i) {
                cj[i] = (beta == 0.0) ? 0.0 : beta * cj[i];
            }
        }
    }
    if (alpha == 0.0 || inner == 0) {
        return;
    }
    if (ta == Trans::No) {
        for (Index j = 0; j < n; ++j) {
            double* cj = c.col_ptr(j);
            for (Index l = 0; l < inner; ++l) {
                const double blj = alpha * ((tb == Trans::No) ? b(l, j) : b(j, l));
                if (blj == 0.0) {
                    continue;
                }
                const double* al = a.col_ptr(l);
                for (Index i = 0; i < m; ++i) {
                    cj[i] += al[i] * blj;
                }
            }
        }
    } else {
        std::vector<double> bcol(static_cast<std::size_t>(inner));
        for (Index j = 0; j < n; ++j) {
            for (Index l = 0; l < inner; ++l) {
                bcol[static_cast<std::size_t>(l)] = (tb == Trans::No) ? b(l, j) : b(j, l);
            }
            double* cj = c.col_ptr(j);
            for (Index i = 0; i < m; ++i) {
                cj[i] += alpha * dot(a.col_ptr(i), bcol.data(), inner);
            }
        }
    }
}

double norm2(const double* x, Index n) {
    double scale = 0.0;
    double ssq = 1.0;
    for (Index i = 0; i < n; ++i) {
        if (x[i] != 0.0) {
            const double a = std::abs(x[i]);
            if (scale < a) {
                ssq = 1.0 + ssq * (scale / a) * (scale / a);
                scale = a;
            } else {
                ssq += (a / scale) * (a / scale);
            }
        }
    }
    return scale * std::sqrt(ssq);
}

double generate_reflector(double& alpha, double* x, Index n) {
    const double xnorm = norm2(x, n);
    if (xnorm == 0.0) {
        return 0.0;
    }
    const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
    const double tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (Index i = 0; i < n; ++i) {
        x[i] *= scale;
    }
    alpha = beta;
    return tau;
}

void apply_reflector_left(const double* v_tail, double tau, MatrixView c) {
    if (tau == 0.0) {
        return;
    }
    for (Index j = 0; j < c.cols; ++j) {
        double* cj = c.col_ptr(j);
        double w = cj[0];
        for (Index i = 1; i < c.rows; ++i) {
            w += v_tail[i - 1] * cj[i];
        }
        w *= tau;
        cj[0] -= w;
        for (Index i = 1; i < c.rows; ++i) {
            cj[i] -= v_tail[i - 1] * w;
        }
    }
}

namespace {

// Explicit copy of the unit lower trapezoidal V with zeros above the diagonal.
DenseMatrix unpack_reflectors(ConstMatrixView v) {
    DenseMatrix out(v.rows, v.cols);
    for (Index j = 0; j < v.cols; ++j) {
        if (j < v.rows) {
            out(j, j) = 1.0;
        }
        for (Index i = j + 1; i < v.rows; ++i) {
            out(i, j) = v(i, j);
        }
    }
    return out;
}

// W ← T·W or Tᵀ·W for upper-triangular T (k×k) and W k×n.
void triangular_multiply(const DenseMatrix& t, bool transposed, DenseMatrix& w) {
    const Index k = t.rows();
    std::vector<double> tmp(static_cast<std::size_t>(k));
    for (Index c = 0; c < w.cols(); ++c) {
        double* x = w.col_ptr(c);
        for (Index i = 0; i < k; ++i) {
            double s = 0.0;
            if (!transposed) {
                for (Index j = i; j < k; ++j) {
                    s += t(i, j) * x[j];
                }
            } else {
                for (Index j = 0; j <= i; ++j) {
                    s += t(j, i) * x[j];
                }
            }
            tmp[static_cast<std::size_t>(i)] = s;
        }
        std::copy(tmp.begin(), tmp.end(), x);
    }
}

}  // namespace

DenseMatrix form_block_factor(ConstMatrixView v, const double* tau) {
    const Index k = v.cols;
    DenseMatrix t(k, k);
    const DenseMatrix vfull = unpack_reflectors(v);
    for (Index j = 0; j < k; ++j) {
        t(j, j) = tau[j];
        if (j == 0 || tau[j] == 0.0) {
            continue;
        }
        // t(0:j, j) = −τ_j · T(0:j,0:j) · V(:,0:j)ᵀ v_j
        std::vector<double> w(static_cast<std::size_t>(j));
        for (Index i = 0; i < j; ++i) {
            w[static_cast<std::size_t>(i)] = -tau[j] * dot(vfull.col_ptr(i), vfull.col_ptr(j), v.rows);
        }
        for (Index i = 0; i < j; ++i) {
            double s = 0.0;
            for (Index l = i; l < j; ++l) {
                s += t(i, l) * w[static_cast<std::size_t>(l)];
            }
            t(i, j) = s;
        }
    }
    return t;
}

void apply_block_left_transposed(ConstMatrixView v, const DenseMatrix& t, MatrixView c) {
    if (v.cols == 0 || c.cols == 0) {
        return;
    }
    const DenseMatrix vfull = unpack_reflectors(v);
    DenseMatrix w(v.cols, c.cols);
    gemm(Trans::Yes, Trans::No, 1.0, vfull.view(), c, 0.0, w.view());
    triangular_multiply(t, true, w);
    gemm(Trans::No, Trans::No, -1.0, vfull.view(), w.view(), 1.0, c);
}

void apply_block_left(ConstMatrixView v, const DenseMatrix& t, MatrixView c) {
    if (v.cols == 0 || c.cols == 0) {
        return;
    }
    const DenseMatrix vfull = unpack_reflectors(v);
    DenseMatrix w(v.cols, c.cols);
    gemm(Trans::Yes, Trans::No, 1.0, vfull.view(), c, 0.0, w.view());
    triangular_multiply(t, false, w);
    gemm(Trans::No, Trans::No, -1.0, vfull.view(), w.view(), 1.0, c);
}

void apply_block_right(ConstMatrixView v, const DenseMatrix& t, MatrixView c) {
    if (v.cols == 0 || c.rows == 0) {
        return;
    }
    const DenseMatrix vfull = unpack_reflectors(v);
    DenseMatrix w(c.rows, v.cols);
    gemm(Trans::No, Trans::No, 1.0, c, vfull.view(), 0.0, w.view());
    // W ← W·T, done as (Tᵀ·Wᵀ)ᵀ.
    DenseMatrix wt = w.transpose();
    triangular_multiply(t, true, wt);
    w = wt.transpose();
    gemm(Trans::No, Trans::Yes, -1.0, w.view(), vfull.view(), 1.0, c);
}

}  // namespace srqr::kernels
