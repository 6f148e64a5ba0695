#include <doctest.h>

#include <cmath>

#include "srqr/householder.hpp"
#include "srqr/random.hpp"
#include "srqr/svd.hpp"
#include "support.hpp"

using namespace srqr;

TEST_CASE("householder_qr of the identity is trivial") {
    const HouseholderQR qr = householder_qr(DenseMatrix::identity(4), 4);
    CHECK(test::diff_norm(qr.r, DenseMatrix::identity(4)) == 0.0);
    for (const double t : qr.q.tau()) {
        CHECK(t == 0.0);
    }
}

TEST_CASE("single column (3,4) gives R11 = 5 in magnitude") {
    const HouseholderQR qr = householder_qr(DenseMatrix::from_rows({{3}, {4}}), 1);
    CHECK(std::abs(qr.r(0, 0)) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(qr.r(1, 0)) <= 1e-15);
}

TEST_CASE("random 8x5 reconstructs to 1e-13") {
    GaussianStream g(11);
    const DenseMatrix a = g.matrix(8, 5);
    const HouseholderQR qr = householder_qr(a, 5);
    CHECK(test::is_upper_trapezoidal(qr.r, 5, 0.0));
    const DenseMatrix back = apply_q(qr.q, qr.r);
    CHECK(test::diff_norm(back, a) / a.frobenius_norm() <= 1e-13);
}

TEST_CASE("apply_q_transpose") {
    GaussianStream g(12);
    const DenseMatrix m = g.matrix(6, 4);
    SUBCASE("identity factorization leaves M unchanged") {
        const HouseholderQR qr = householder_qr(DenseMatrix::identity(6), 6);
        CHECK(test::diff_norm(apply_q_transpose(qr.q, m), m) == 0.0);
    }
    SUBCASE("Q^T A is upper triangular for the A that produced Q") {
        const DenseMatrix a = g.matrix(6, 3);
        const HouseholderQR qr = householder_qr(a, 3);
        const DenseMatrix r = apply_q_transpose(qr.q, a);
        CHECK(test::is_upper_trapezoidal(r, 3, 1e-12 * a.frobenius_norm()));
    }
    SUBCASE("norm preservation and round trip") {
        const HouseholderQR qr = householder_qr(g.matrix(6, 6), 5);
        const DenseMatrix qtm = apply_q_transpose(qr.q, m);
        CHECK(qtm.frobenius_norm() == doctest::Approx(m.frobenius_norm()).epsilon(1e-12));
        CHECK(test::diff_norm(apply_q(qr.q, qtm), m) <= 1e-14 * m.frobenius_norm());
    }
    SUBCASE("dimension mismatch") {
        const HouseholderQR qr = householder_qr(g.matrix(5, 3), 3);
        CHECK_THROWS_AS(apply_q_transpose(qr.q, m), DimensionError);
    }
}

TEST_CASE("explicit Q is orthogonal to 10 n eps at n = 200") {
    GaussianStream g(13);
    const Index n = 200;
    const HouseholderQR qr = householder_qr(g.matrix(n, n), n);
    DenseMatrix q = DenseMatrix::identity(n);
    qr.q.apply_in_place(q.view());
    const DenseMatrix qtq = test::naive_multiply(q.transpose(), q);
    CHECK(test::diff_norm(qtq, DenseMatrix::identity(n)) <= 10.0 * n * kEpsilon);
}

TEST_CASE("blocked and right application agree with the explicit matrix") {
    GaussianStream g(14);
    const HouseholderQR qr = householder_qr(g.matrix(40, 40), 37);
    DenseMatrix q = DenseMatrix::identity(40);
    qr.q.apply_in_place(q.view());
    DenseMatrix m = g.matrix(9, 40);
    const DenseMatrix expect = test::naive_multiply(m, q);
    qr.q.apply_right_in_place(m.view());
    CHECK(test::diff_norm(m, expect) <= 1e-13 * expect.frobenius_norm());
}

TEST_CASE("makes Givens rotations that zero the second entry") {
    const GivensRotation g = make_givens(0, 3.0, 4.0);
    DenseMatrix v = DenseMatrix::from_rows({{3.0}, {4.0}});
    apply_givens(g, v.view());
    CHECK(v(0, 0) == doctest::Approx(5.0));
    CHECK(std::abs(v(1, 0)) <= 1e-15);
    const GivensRotation id = make_givens(0, 2.0, 0.0);
    CHECK(id.c == 1.0);
    CHECK(id.s == 0.0);
}

TEST_CASE("givens_restore") {
    SUBCASE("already triangular input is unchanged") {
        const DenseMatrix r = DenseMatrix::from_rows({{2, 1, 1}, {0, 3, 1}, {0, 0, 4}});
        const GivensRestoreResult out = givens_restore(r, 0);
        CHECK(out.r == r);
        CHECK(out.applied.rotations.empty());
    }
    SUBCASE("round-robin rotation keeps the spectrum") {
        const DenseMatrix r = DenseMatrix::from_rows({{4, 1, -2}, {0, 3, 1}, {0, 0, 2}});
        // Column 0 moved to the end: (c2, c3, c1).
        const DenseMatrix rot = permute_columns(r, Permutation({1, 2, 0}));
        const GivensRestoreResult out = givens_restore(rot, 0);
        CHECK(test::is_upper_trapezoidal(out.r, 3, 0.0));
        CHECK(out.applied.rotations.size() == 2);
        const auto s0 = singular_values(r);
        const auto s1 = singular_values(out.r);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(s0[i] - s1[i]) <= 1e-12 * s0[0]);
        }
        // Column norms of QᵀAΠ are preserved by the rotations.
        for (Index j = 0; j < 3; ++j) {
            const DenseMatrix a = rot.block(0, j, 3, 1);
            const DenseMatrix b = out.r.block(0, j, 3, 1);
            CHECK(b.frobenius_norm() == doctest::Approx(a.frobenius_norm()).epsilon(1e-12));
        }
    }
    SUBCASE("spike in the last column only needs one rotation") {
        DenseMatrix r = DenseMatrix::from_rows({{1, 2, 3}, {0, 1, 2}, {0, 0, 1}, {0, 0, 0}});
        r(3, 2) = 0.5;
        const GivensRestoreResult out = givens_restore(r, 2);
        CHECK(out.applied.rotations.size() == 1);
        CHECK(out.r(3, 2) == 0.0);
    }
    SUBCASE("entries below the first subdiagonal are malformed") {
        DenseMatrix r = DenseMatrix::from_rows({{1, 2, 3}, {1, 1, 2}, {1, 0, 1}});
        CHECK_THROWS_AS(givens_restore(r, 0, 2), NumericalError);
    }
}

TEST_CASE("orthogonal factor mixes reflectors and rotations") {
    GaussianStream g(15);
    const DenseMatrix a = g.matrix(7, 5);
    const HouseholderQR qr = householder_qr(a, 5);
    OrthogonalFactor q(qr.q);
    DenseMatrix r = qr.r;
    // Rotate column 1 to position 4, then restore.
    const DenseMatrix rot = permute_columns(r, Permutation({0, 2, 3, 4, 1}));
    const GivensRestoreResult fix = givens_restore(rot, 1, 4);
    q.append(fix.applied);
    // A·Π = Q·R with Π the same rotation.
    const DenseMatrix lhs = permute_columns(a, Permutation({0, 2, 3, 4, 1}));
    CHECK(test::diff_norm(apply_q(q, fix.r), lhs) <= 1e-13 * a.frobenius_norm());
    CHECK(test::diff_norm(apply_q_transpose(q, lhs), fix.r) <= 1e-13 * a.frobenius_norm());
    const DenseMatrix explicit_q = q.form();
    CHECK(test::diff_norm(test::naive_multiply(explicit_q.transpose(), explicit_q), DenseMatrix::identity(7)) <=
          1e-14 * 7);
    CHECK(q.form(3).cols() == 3);
}
