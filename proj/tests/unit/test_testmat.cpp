#include <doctest.h>

#include <cmath>
#include <vector>

#include "srqr/pivoted_qr.hpp"
#include "srqr/svd.hpp"
#include "srqr/testmat.hpp"
#include "support.hpp"

using namespace srqr;

TEST_CASE("Kahan entries") {
    const KahanSpec spec = KahanSpec::standard(4, 0.285);
    CHECK(spec.s == doctest::Approx(std::sqrt(0.9999 - 0.285 * 0.285)));
    const DenseMatrix k = kahan(spec);
    const double s = spec.s;
    CHECK(k(0, 0) == 1.0);
    CHECK(k(0, 3) == doctest::Approx(-0.285));
    CHECK(k(2, 2) == doctest::Approx(s * s));
    CHECK(k(2, 3) == doctest::Approx(-0.285 * s * s));
    CHECK(k(3, 0) == 0.0);
    CHECK(k(3, 3) == doctest::Approx(s * s * s));
}

TEST_CASE("Kahan validation") {
    CHECK_THROWS_AS(kahan(KahanSpec{0, 0.285, 0.9}), DimensionError);
    CHECK_THROWS_AS(kahan(KahanSpec{4, 0.8, 0.8}), DimensionError);
    CHECK_THROWS_AS(kahan(KahanSpec{4, 0.0, 0.9}), DimensionError);
}

TEST_CASE("Kahan hides its small singular value from QRCP") {
    const DenseMatrix k = kahan(KahanSpec::standard(96));
    const auto s = singular_values(k);
    CHECK(s.back() / std::abs(k(95, 95)) <= 1e-3);
    const PivotedQRFactorization f = qrcp(k, 96);
    CHECK(f.pi.is_identity());
}

TEST_CASE("decaying_spectrum has the requested singular values") {
    const std::vector<double> sigma{10, 5, 2, 1, 0.5, 1e-3};
    const DenseMatrix a = decaying_spectrum(30, 20, sigma, 3);
    CHECK(a.rows() == 30);
    CHECK(a.cols() == 20);
    const auto s = singular_values(a);
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        CHECK(std::abs(s[j] - sigma[j]) <= 1e-9 * sigma.front());
    }
    CHECK(s[6] <= 1e-12);
    const DenseMatrix g = decaying_spectrum(15, 12, 0.5, 4);
    const auto sg = singular_values(g);
    for (std::size_t j = 0; j < 12; ++j) {
        CHECK(sg[j] == doctest::Approx(std::pow(0.5, static_cast<double>(j))).epsilon(1e-9));
    }
    CHECK_THROWS_AS(decaying_spectrum(5, 4, std::vector<double>{1, 2}, 1), DimensionError);
    CHECK_THROWS_AS(decaying_spectrum(5, 4, std::vector<double>{1, 1, 1, 1, 1}, 1), DimensionError);
}

TEST_CASE("equal singular values give a matching Frobenius norm") {
    const std::vector<double> sigma(8, 2.0);
    const DenseMatrix a = decaying_spectrum(20, 10, sigma, 5);
    CHECK(test::naive_frobenius(a) == doctest::Approx(2.0 * std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("random_orthonormal") {
    const DenseMatrix q = random_orthonormal(25, 7, 6);
    const DenseMatrix g = test::naive_multiply(q.transpose(), q);
    CHECK(test::diff_norm(g, DenseMatrix::identity(7)) <= 1e-13);
    CHECK(test::diff_norm(q, random_orthonormal(25, 7, 6)) == 0.0);
    CHECK(test::diff_norm(q, random_orthonormal(25, 7, 7)) > 0.1);
}

TEST_CASE("random_low_rank has the requested rank") {
    const auto s = singular_values(random_low_rank(20, 15, 4, 7));
    CHECK(s[3] > 1e-3 * s[0]);
    CHECK(s[4] <= 1e-12 * s[0]);
}

TEST_CASE("kernel matrices are symmetric positive definite") {
    for (const KernelType type : {KernelType::Gaussian, KernelType::Laplacian}) {
        const DenseMatrix k = kernel_matrix(40, 3, 0.5, type, 8);
        for (Index i = 0; i < 40; ++i) {
            CHECK(k(i, i) == 1.0);
            for (Index j = 0; j < i; ++j) {
                CHECK(k(i, j) == k(j, i));
                CHECK(k(i, j) > 0.0);
                CHECK(k(i, j) <= 1.0);
            }
        }
        const auto s = singular_values(k);
        CHECK(s.back() > 0.0);
        // Symmetric with positive eigenvalues: tr(K) = Σσ.
        double sum = 0.0;
        for (const double v : s) {
            sum += v;
        }
        CHECK(sum == doctest::Approx(40.0).epsilon(1e-10));
    }
}
