#include <doctest.h>

#include <cmath>

#include "srqr/pivoted_qr.hpp"
#include "srqr/random.hpp"
#include "srqr/testmat.hpp"
#include "support.hpp"

using namespace srqr;

namespace {

std::vector<Index> as_vector(const Permutation& p) { return {p.indices().begin(), p.indices().end()}; }

}  // namespace

TEST_CASE("diag(1,2,3) pivots in reverse order") {
    const std::vector<double> d{1, 2, 3};
    const PivotedQRFactorization f = qrcp(DenseMatrix::diagonal(d), 3);
    CHECK(as_vector(f.pi) == std::vector<Index>{2, 1, 0});
    CHECK(std::abs(f.r(0, 0)) == 3.0);
}

TEST_CASE("identity: no interchanges and dominance with equality") {
    const PivotedQRFactorization f = qrcp(DenseMatrix::identity(5), 5);
    CHECK(f.pi.is_identity());
    const DominanceReport rep = check_dominance(f, 1.0);
    CHECK(rep.holds);
    CHECK(rep.worst_ratio == doctest::Approx(1.0));
}

TEST_CASE("Kahan n=96: QRCP makes no interchanges") {
    const DenseMatrix k = kahan(KahanSpec::standard(96));
    const PivotedQRFactorization f = qrcp(k, 96);
    CHECK(f.pi.is_identity());
    CHECK(truncated_residual(qrcp(k, 95), k) == doctest::Approx(1.808e-3).epsilon(0.02));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(qrcp(DenseMatrix(), 1), DimensionError);
    CHECK_THROWS_AS(qrcp(DenseMatrix::identity(3), 0), DimensionError);
    CHECK_THROWS_AS(qrcp(DenseMatrix::identity(3), 4), DimensionError);
}

TEST_CASE("pivot order matches the brute-force reference") {
    GaussianStream pick(41);
    for (int t = 0; t < 40; ++t) {
        const Index m = 3 + static_cast<Index>(pick.uniform() * 28);
        const Index n = 3 + static_cast<Index>(pick.uniform() * 28);
        const Index k = std::min(m, n);
        const DenseMatrix a = gaussian_matrix(m, n, 100 + t);
        const test::ReferenceQrcp ref = test::reference_qrcp(a, k);
        for (const Index width : {1, 4, 64}) {
            const PivotedQRFactorization f = qrcp(a, k, {.panel_width = width});
            CAPTURE(t);
            CAPTURE(width);
            const auto got = as_vector(f.pi);
            CHECK(std::equal(got.begin(), got.begin() + k, ref.perm.begin()));
            for (Index i = 0; i < k; ++i) {
                CHECK(std::abs(f.r(i, i)) ==
                      doctest::Approx(ref.diag[static_cast<std::size_t>(i)]).epsilon(1e-9).scale(a.frobenius_norm()));
            }
        }
    }
}

TEST_CASE("reconstruction, dominance and monotone diagonal") {
    GaussianStream pick(42);
    for (int t = 0; t < 30; ++t) {
        const Index m = 5 + static_cast<Index>(pick.uniform() * 80);
        const Index n = 5 + static_cast<Index>(pick.uniform() * 80);
        const Index k = 1 + static_cast<Index>(pick.uniform() * std::min(m, n));
        const DenseMatrix a = decaying_spectrum(m, n, 0.8, 200 + t);
        const PivotedQRFactorization f = qrcp(a, k, {.panel_width = 8});
        CHECK(reconstruction_error(f, a) <= 100 * kEpsilon);
        CHECK(test::is_upper_trapezoidal(f.r, k, 0.0));
        CHECK(check_dominance(f, 1.0).holds);
        for (Index i = 1; i < k; ++i) {
            CHECK(std::abs(f.r(i, i)) <= std::abs(f.r(i - 1, i - 1)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("dominance with an impossible factor produces a witness") {
    const PivotedQRFactorization f = qrcp(gaussian_matrix(10, 8, 43), 5);
    const DominanceReport rep = check_dominance(f, 10.0);
    CHECK_FALSE(rep.holds);
    CHECK(rep.witness.first >= 0);
    CHECK(rep.witness.second > rep.witness.first);
    CHECK(rep.worst_ratio < 10.0);
    CHECK(rep.worst_ratio >= 1.0 - 1e-10);
}

TEST_CASE("truncated residual: two routes agree, zero steps gives one") {
    const DenseMatrix a = decaying_spectrum(30, 25, 0.7, 44);
    const PivotedQRFactorization f = qrcp(a, 6);
    CHECK(truncated_residual(f, a) == doctest::Approx(truncated_residual_direct(f, a)).epsilon(1e-10));
    CHECK(truncated_residual(PivotedQRFactorization::unfactored(a), a) == 1.0);
}

TEST_CASE("columns of equal norm are taken in index order") {
    const DenseMatrix a = DenseMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(qrcp(a, 3).pi.is_identity());
}
