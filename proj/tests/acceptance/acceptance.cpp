// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "srqr/cur_cx.hpp"
#include "srqr/pivoted_qr.hpp"
#include "srqr/random.hpp"
#include "srqr/rqrcp.hpp"
#include "srqr/sketch.hpp"
#include "srqr/srqr.hpp"
#include "srqr/svd.hpp"
#include "srqr/testmat.hpp"

namespace {

using namespace srqr;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

SRQRConfig srqr_config(Index k, Index l, std::uint64_t seed) {
    SRQRConfig cfg;
    cfg.k = k;
    cfg.l = l;
    cfg.sketch.seed = seed;
    return cfg;
}

Outcome kahan_residual() {
    Outcome out{true, ""};
    for (const Index n : {96, 192}) {
        const DenseMatrix k = kahan(KahanSpec::standard(n));
        const SRQRResult s = srqr::srqr(k, srqr_config(n - 1, n - 1, 1));
        const double rs = truncated_residual(s.factorization, k);
        const double rq = truncated_residual(qrcp(k, n - 1), k);
        out.pass = out.pass && rs <= 1e-10 && rq >= 1e-6;
        out.detail += fmt("n=%ld srqr=%.3e qrcp=%.3e swaps=%ld; ", static_cast<long>(n), rs, rq,
                          static_cast<long>(s.diagnostics.swaps));
    }
    return out;
}

Outcome kahan_singular_value_ratios() {
    const Index n = 192;
    const DenseMatrix k = kahan(KahanSpec::standard(n));
    const std::vector<double> sa = singular_values(k);
    const SRQRResult s = srqr::srqr(k, srqr_config(n - 1, n - 1, 1));
    const std::vector<double> ss = singular_values(s.factorization.r11());
    const std::vector<double> sq = singular_values(qrcp(k, n - 1).r11());
    double worst = 1e300;
    for (Index j = 187; j <= 191; ++j) {
        worst = std::min(worst, ss[static_cast<std::size_t>(j - 1)] / sa[static_cast<std::size_t>(j - 1)]);
    }
    const double qrcp_ratio = sq[190] / sa[190];
    return {worst >= 0.99 && qrcp_ratio <= 1e-10,
            fmt("srqr min ratio j=187..191 %.6f, qrcp ratio j=191 %.3e", worst, qrcp_ratio)};
}

Outcome formula_equivalence() {
    GaussianStream pick(2024);
    int mismatched = 0;
    double worst_rel = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Index m = 40 + static_cast<Index>(pick.uniform() * 260);
        const Index n = 40 + static_cast<Index>(pick.uniform() * 260);
        const Index k = 5 + static_cast<Index>(pick.uniform() * (std::min(m, n) / 2 - 5));
        const DenseMatrix a = decaying_spectrum(m, n, 0.95, 100 + t);
        SketchConfig c1;
        c1.block_size = 8 + static_cast<Index>(pick.uniform() * 24);
        c1.oversample = 10;
        c1.seed = 500 + t;
        SketchConfig c2 = c1;
        c2.update_rule = UpdateRule::Formula2;
        const RQRCPResult r1 = rqrcp(a, k, c1);
        const RQRCPResult r2 = rqrcp(a, k, c2);
        if (r1.factorization.pi != r2.factorization.pi || r1.sketch_trace != r2.sketch_trace) {
            ++mismatched;
        }
        const double e1 = truncated_residual(r1, a);
        const double e2 = truncated_residual(r2, a);
        worst_rel = std::max(worst_rel, std::abs(e1 - e2) / std::max(e1, e2));
    }
    const DenseMatrix big = gaussian_matrix(1000, 1000, 77);
    SketchConfig f1;
    f1.seed = 3;
    SketchConfig f2 = f1;
    f2.update_rule = UpdateRule::Formula2;
    const double ratio = rqrcp(big, 64, f1).flops.sketch_update / rqrcp(big, 64, f2).flops.sketch_update;
    return {mismatched == 0 && worst_rel <= 1e-10 && ratio <= 0.6,
            fmt("permutation mismatches %d/20, worst residual rel diff %.2e, flop ratio f1/f2 %.3f", mismatched,
                worst_rel, ratio)};
}

Outcome oversampling_formula() {
    const Index p = min_oversampling(1000, 200, 0.5, 0.05);
    return {p == 508, fmt("min_oversampling(1000,200,0.5,0.05) = %ld", static_cast<long>(p))};
}

Outcome jl_tail() {
    const Index r = 25;
    const double eps = 0.5;
    const int trials = 100000;
    GaussianStream stream(11);
    const DenseMatrix xm = stream.matrix(16, 1);
    const std::vector<double> x(xm.data().begin(), xm.data().end());
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const DenseMatrix omega = stream.matrix(r, 16);
        failures += !jl_check(x, omega, eps);
    }
    const double bound = jl_failure_bound(r, eps);
    const double se = std::sqrt(bound * (1.0 - bound) / trials);
    const double freq = static_cast<double>(failures) / trials;
    return {freq <= bound + 3.0 * se, fmt("failure frequency %.4f, bound %.4f + 3se %.4f", freq, bound, 3.0 * se)};
}

Outcome dominance() {
    GaussianStream pick(6);
    int qrcp_fail = 0;
    for (int t = 0; t < 500; ++t) {
        const Index m = 2 + static_cast<Index>(pick.uniform() * 60);
        const Index n = 2 + static_cast<Index>(pick.uniform() * 60);
        const Index k = 1 + static_cast<Index>(pick.uniform() * std::min(m, n));
        const DenseMatrix a = t % 2 ? gaussian_matrix(m, n, 9000 + t) : decaying_spectrum(m, n, 0.7, 9000 + t);
        qrcp_fail += !check_dominance(qrcp(a, k), 1.0).holds;
    }
    const Index n = 100;
    const Index k = 20;
    const Index p = min_oversampling(n, k, 0.5, 0.05);
    const Index m = 400;
    int passed = 0;
    for (int t = 0; t < 200; ++t) {
        const DenseMatrix a = decaying_spectrum(m, n, 0.9, 20000 + t);
        SketchConfig cfg;
        cfg.block_size = 16;
        cfg.oversample = p;
        cfg.seed = 30000 + t;
        passed += check_dominance(rqrcp(a, k, cfg).factorization, std::sqrt(1.0 / 3.0)).holds;
    }
    return {qrcp_fail == 0 && passed >= 190,
            fmt("qrcp failures %d/500; rqrcp (p=%ld) passes %d/200", qrcp_fail, static_cast<long>(p), passed)};
}

Outcome bound_suite() {
    GaussianStream pick(7);
    int failures = 0;
    int swaps = 0;
    std::string first;
    for (int t = 0; t < 100; ++t) {
        const Index m = 20 + static_cast<Index>(pick.uniform() * 101);
        const Index n = 20 + static_cast<Index>(pick.uniform() * 101);
        const Index l = std::min<Index>(2 + static_cast<Index>(pick.uniform() * 29), std::min(m, n));
        const Index k = 1 + static_cast<Index>(pick.uniform() * std::min<Index>(15, l));
        const double ratio = 0.5 + 0.45 * pick.uniform();
        const DenseMatrix a = t % 3 == 0 ? gaussian_matrix(m, n, 40000 + t) : decaying_spectrum(m, n, ratio, 40000 + t);
        SRQRConfig cfg = srqr_config(k, l, 50000 + t);
        cfg.sketch.block_size = 8;
        const SRQRResult s = srqr::srqr(a, cfg);
        swaps += static_cast<int>(s.diagnostics.swaps);
        const BoundReport rep = verify_bounds(s.factorization, s.truncated, a);
        if (!rep.all_pass()) {
            ++failures;
            for (const BoundCheck& c : rep.checks) {
                if (!c.pass && first.empty()) {
                    first = fmt(" first failure: instance %d %s", t, c.name.c_str());
                }
            }
        }
    }
    const DenseMatrix kahan96 = kahan(KahanSpec::standard(96));
    const SRQRResult s = srqr::srqr(kahan96, srqr_config(95, 95, 1));
    const bool kahan_ok = verify_bounds(s.factorization, s.truncated, kahan96).all_pass();
    return {failures == 0 && kahan_ok,
            fmt("random failures %d/100 (total swaps %d), kahan n=96 %s%s", failures, swaps, kahan_ok ? "pass" : "fail",
                first.c_str())};
}

Outcome triangular_inverse_property() {
    GaussianStream pick(8);
    int violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const double c = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(t % 3)];
        const Index n = 1 + static_cast<Index>(pick.uniform() * 15);
        DenseMatrix w = DenseMatrix::identity(n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < j; ++i) {
                // Entries at ±c half the time drive ‖W⁻¹‖₁ toward the bound.
                const double u = 2.0 * pick.uniform() - 1.0;
                w(i, j) = t % 2 ? c * u : -c;
            }
        }
        if (t % 4 == 3) {
            w = w.transpose();
        }
        const double val = triangular_inverse_one_norm(w);
        const double bound = triangular_inverse_norm_bound(n, c);
        worst = std::max(worst, val / bound);
        violations += val > bound * (1.0 + 1e-12);
    }
    return {violations == 0, fmt("violations %d/500, max ratio to bound %.6f", violations, worst)};
}

Outcome cur_cx_quality() {
    const DenseMatrix a = kernel_matrix(300, 3, 0.5, KernelType::Laplacian, 99);
    const SRQRConfig cfg = srqr_config(50, 50, 5);
    std::vector<double> res;
    std::string detail = "CUR residuals";
    for (const Index c : {60, 80, 100, 120}) {
        const CURDecomposition d = cur(a, c, c, cfg);
        res.push_back(subtract(a, d.reconstruct(a)).frobenius_norm());
        detail += fmt(" %.4e", res.back());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < res.size(); ++i) {
        monotone = monotone && res[i] <= res[i - 1];
    }
    const double cx_res = subtract(a, cx(a, 100, cfg).reconstruct(a)).frobenius_norm();
    const double best = subtract(a, truncated_svd(a, 50)).frobenius_norm();
    return {monotone && cx_res <= 1.5 * best,
            detail + fmt("; CX(c=100) %.4e vs 1.5*||A-A_k|| %.4e", cx_res, 1.5 * best)};
}

Outcome rqrcp_quality() {
    bool pass = true;
    std::string detail;
    for (const Index k : {20, 50, 100}) {
        std::vector<double> ratios;
        for (int seed = 0; seed < 50; ++seed) {
            const DenseMatrix a = decaying_spectrum(200, 200, 0.9, 60000 + seed);
            SketchConfig cfg;
            cfg.seed = 70000 + seed;
            ratios.push_back(truncated_residual(rqrcp(a, k, cfg), a) / truncated_residual(qrcp(a, k), a));
        }
        const double med = median(ratios);
        pass = pass && med <= 1.1;
        detail += fmt("k=%ld median ratio %.4f; ", static_cast<long>(k), med);
    }
    return {pass, detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria = {
        {"kahan_residual", kahan_residual, 5.0},
        {"kahan_singular_value_ratios", kahan_singular_value_ratios, 30.0},
        {"update_formula_equivalence", formula_equivalence, 0.0},
        {"oversampling_formula", oversampling_formula, 0.0},
        {"jl_tail_frequency", jl_tail, 0.0},
        {"pseudo_diagonal_dominance", dominance, 0.0},
        {"bound_suite", bound_suite, 0.0},
        {"triangular_inverse_norm", triangular_inverse_property, 0.0},
        {"cur_cx_quality", cur_cx_quality, 60.0},
        {"rqrcp_vs_qrcp_residual", rqrcp_quality, 0.0},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].budget_seconds > 0.0 && secs > criteria[i].budget_seconds) {
            o.pass = false;
            o.detail += fmt(" [over time budget %.0fs]", criteria[i].budget_seconds);
        }
        failed += !o.pass;
        std::printf("%s %2zu %-28s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
