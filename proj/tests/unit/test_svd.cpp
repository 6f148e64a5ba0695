#include <doctest.h>

#include <cmath>

#include "srqr/random.hpp"
#include "srqr/svd.hpp"
#include "support.hpp"

using namespace srqr;

TEST_CASE("diagonal matrix") {
    const std::vector<double> d{1.0, 3.0, 2.0};
    const auto s = singular_values(DenseMatrix::diagonal(d));
    CHECK(s == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("rank-one outer product") {
    const DenseMatrix u = DenseMatrix::from_rows({{1}, {2}, {2}});
    const DenseMatrix v = DenseMatrix::from_rows({{3, 4}});
    const auto s = singular_values(multiply(u, v));
    CHECK(s.size() == 2);
    CHECK(s[0] == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(s[1] <= 1e-14);
}

TEST_CASE("Frobenius identity on random matrices, tall and wide") {
    GaussianStream g(21);
    for (const auto& [m, n] : {std::pair<Index, Index>{10, 7}, {7, 10}, {30, 30}}) {
        const DenseMatrix a = g.matrix(m, n);
        const auto s = singular_values(a);
        double sum = 0.0;
        for (const double x : s) {
            sum += x * x;
        }
        const double f = test::naive_frobenius(a);
        CHECK(std::abs(sum - f * f) <= 1e-10 * f * f);
        CHECK(std::is_sorted(s.rbegin(), s.rend()));
    }
}

TEST_CASE("singular vectors reconstruct the matrix") {
    GaussianStream g(22);
    const DenseMatrix a = g.matrix(9, 6);
    const SvdResult r = svd_oracle(a, {.want_vectors = true});
    REQUIRE(r.u);
    REQUIRE(r.v);
    DenseMatrix us = *r.u;
    for (Index j = 0; j < us.cols(); ++j) {
        for (Index i = 0; i < us.rows(); ++i) {
            us(i, j) *= r.values[static_cast<std::size_t>(j)];
        }
    }
    CHECK(test::diff_norm(test::naive_multiply(us, r.v->transpose()), a) <= 1e-13 * a.frobenius_norm());
}

TEST_CASE("truncated_svd keeps the leading spectrum") {
    GaussianStream g(23);
    const DenseMatrix a = g.matrix(12, 8);
    const auto s = singular_values(a);
    const DenseMatrix a3 = truncated_svd(a, 3);
    const auto s3 = singular_values(a3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(s3[j] == doctest::Approx(s[j]).epsilon(1e-12));
    }
    CHECK(s3[3] <= 1e-12 * s[0]);
    CHECK(spectral_norm(subtract(a, a3)) == doctest::Approx(s[3]).epsilon(1e-12));
}

TEST_CASE("iteration cap signals non-convergence") {
    GaussianStream g(24);
    CHECK_THROWS_AS(svd_oracle(g.matrix(20, 20), {.want_vectors = false, .max_sweeps = 1}), NumericalError);
}
