#include <doctest.h>

#include <algorithm>
#include <set>

#include "srqr/rqrcp.hpp"
#include "srqr/testmat.hpp"
#include "support.hpp"

using namespace srqr;

TEST_CASE("well separated column norms are found with high frequency") {
    // diag(5,4,3,2,1) padded with zero rows so that b + p fits.
    DenseMatrix a(24, 5);
    for (Index i = 0; i < 5; ++i) {
        a(i, i) = 5.0 - static_cast<double>(i);
    }
    int hits = 0;
    for (int seed = 0; seed < 100; ++seed) {
        SketchConfig cfg;
        cfg.block_size = 3;
        cfg.oversample = 20;
        cfg.seed = static_cast<std::uint64_t>(seed);
        const RQRCPResult r = rqrcp(a, 3, cfg);
        const std::set<Index> chosen(r.factorization.pi.indices().begin(), r.factorization.pi.indices().begin() + 3);
        hits += chosen == std::set<Index>{0, 1, 2};
    }
    // The measured rate is about 0.968.
    CHECK(hits >= 90);
}

TEST_CASE("identity with k = n reconstructs exactly") {
    SketchConfig cfg;
    cfg.block_size = 2;
    cfg.oversample = 1;
    const DenseMatrix a = DenseMatrix::identity(6);
    const RQRCPResult r = rqrcp(a, 6, cfg);
    CHECK(r.factorization.r22().cols() == 0);
    CHECK(reconstruction_error(r.factorization, a) <= 1e-13);
    CHECK(r.achieved_rank == 6);
}

TEST_CASE("exact rank 40 is recovered") {
    const DenseMatrix a = random_low_rank(300, 300, 40, 3);
    SketchConfig cfg;
    cfg.block_size = 32;
    cfg.oversample = 10;
    cfg.seed = 4;
    const RQRCPResult r = rqrcp(a, 40, cfg);
    CHECK(truncated_residual(r, a) <= 1e-10);
    CHECK(reconstruction_error(r.factorization, a) <= 100 * kEpsilon);
}

TEST_CASE("truncated residual agrees with the direct route") {
    const DenseMatrix a = decaying_spectrum(80, 60, 0.85, 5);
    SketchConfig cfg;
    cfg.block_size = 8;
    cfg.seed = 6;
    const RQRCPResult r = rqrcp(a, 20, cfg);
    CHECK(truncated_residual(r, a) == doctest::Approx(truncated_residual_direct(r.factorization, a)).epsilon(1e-10));
}

TEST_CASE("partial final block and per-block trace") {
    const DenseMatrix a = gaussian_matrix(90, 70, 7);
    SketchConfig cfg;
    cfg.block_size = 32;
    cfg.seed = 8;
    const RQRCPResult r = rqrcp(a, 50, cfg);
    REQUIRE(r.sketch_trace.size() == 2);
    CHECK(r.sketch_trace[0].size() == 32);
    CHECK(r.sketch_trace[1].size() == 18);
    std::size_t total = 0;
    for (const auto& block : r.sketch_trace) {
        total += block.size();
    }
    CHECK(total == 50);
    CHECK(test::is_upper_trapezoidal(r.factorization.r, 50, 0.0));
}

TEST_CASE("fixed seed is deterministic") {
    const DenseMatrix a = gaussian_matrix(50, 40, 9);
    SketchConfig cfg;
    cfg.block_size = 8;
    cfg.seed = 10;
    const RQRCPResult r1 = rqrcp(a, 20, cfg);
    const RQRCPResult r2 = rqrcp(a, 20, cfg);
    CHECK(r1.factorization.pi == r2.factorization.pi);
    CHECK(r1.factorization.r == r2.factorization.r);
}

TEST_CASE("rank-deficient input stops early and reports the achieved rank") {
    const DenseMatrix a = random_low_rank(40, 30, 5, 11);
    SketchConfig cfg;
    cfg.block_size = 4;
    cfg.oversample = 4;
    cfg.seed = 12;
    const RQRCPResult r = rqrcp(a, 12, cfg);
    CHECK(r.achieved_rank <= 8);
    CHECK(r.achieved_rank >= 5);
    CHECK(reconstruction_error(r.factorization, a) <= 100 * kEpsilon);

    const RQRCPResult z = rqrcp(DenseMatrix(20, 10), 4, cfg);
    CHECK(z.achieved_rank == 0);
    CHECK(z.factorization.steps == 0);
}

TEST_CASE("argument checks") {
    SketchConfig cfg;
    CHECK_THROWS_AS(rqrcp(DenseMatrix::identity(5), 2, cfg), DimensionError);  // b + p > m
    cfg.block_size = 2;
    cfg.oversample = 1;
    CHECK_THROWS_AS(rqrcp(DenseMatrix::identity(5), 6, cfg), DimensionError);
    CHECK_THROWS_AS(rqrcp(DenseMatrix(), 1, cfg), DimensionError);
}

TEST_CASE("residual tracks QRCP on geometric decay") {
    std::vector<double> ratios;
    for (int seed = 0; seed < 15; ++seed) {
        const DenseMatrix a = decaying_spectrum(120, 120, 0.9, 300 + seed);
        SketchConfig cfg;
        cfg.block_size = 16;
        cfg.seed = static_cast<std::uint64_t>(400 + seed);
        ratios.push_back(truncated_residual(rqrcp(a, 30, cfg), a) / truncated_residual(qrcp(a, 30), a));
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] <= 1.1);
}
