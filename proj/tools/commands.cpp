#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "srqr/cur_cx.hpp"
#include "srqr/io.hpp"
#include "srqr/pivoted_qr.hpp"
#include "srqr/random.hpp"
#include "srqr/report.hpp"
#include "srqr/rqrcp.hpp"
#include "srqr/srqr.hpp"
#include "srqr/svd.hpp"
#include "srqr/testmat.hpp"

namespace srqr::cli {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMatrixStream = 0x6d6174;

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Input {
    DenseMatrix a;
    json desc;
};

DenseMatrix synthetic(const Options& o, std::uint64_t seed) {
    if (o.matrix == "gaussian") {
        return gaussian_matrix(o.m, o.n, seed);
    }
    if (o.matrix == "decay") {
        return decaying_spectrum(o.m, o.n, o.decay, seed);
    }
    if (o.matrix == "lowrank") {
        return random_low_rank(o.m, o.n, o.rank, seed);
    }
    if (o.m != o.n) {
        throw UsageError("kernel matrices are square: --m and --n must match");
    }
    const KernelType type = o.matrix == "kernel" ? KernelType::Laplacian : KernelType::Gaussian;
    return kernel_matrix(o.n, 3, o.bandwidth, type, seed);
}

json synthetic_desc(const Options& o, std::uint64_t seed) {
    json d = {{"source", "synthetic"}, {"matrix", o.matrix}, {"m", o.m}, {"n", o.n}, {"seed", seed}};
    if (o.matrix == "decay") {
        d["decay"] = o.decay;
    } else if (o.matrix == "lowrank") {
        d["rank"] = o.rank;
    } else if (o.matrix != "gaussian") {
        d["bandwidth"] = o.bandwidth;
    }
    return d;
}

Input load_input(const Options& o) {
    const int sources = int(!o.input.empty()) + int(o.kahan > 0) + int(o.m > 0 || o.n > 0);
    if (sources == 0) {
        throw UsageError("no input matrix: give --input FILE, --kahan N, or --m M --n N");
    }
    if (sources > 1) {
        throw UsageError("give only one of --input, --kahan, --m/--n");
    }
    if (!o.input.empty()) {
        MatrixFormat fmt = MatrixFormat::Auto;
        if (o.input_format == "mtx") {
            fmt = MatrixFormat::MatrixMarket;
        } else if (o.input_format == "csv") {
            fmt = MatrixFormat::Csv;
        }
        DenseMatrix a = load_matrix(o.input, fmt);
        json d = {{"source", "file"}, {"path", o.input}, {"m", a.rows()}, {"n", a.cols()}};
        return {std::move(a), std::move(d)};
    }
    if (o.kahan > 0) {
        return {kahan(KahanSpec::standard(o.kahan, o.kahan_c)),
                {{"source", "kahan"}, {"n", o.kahan}, {"c", o.kahan_c}}};
    }
    if (o.m <= 0 || o.n <= 0) {
        throw UsageError("--m and --n must both be positive");
    }
    const std::uint64_t seed = derive_seed(o.seed, kMatrixStream);
    return {synthetic(o, seed), synthetic_desc(o, seed)};
}

Index require_k(const Options& o, const DenseMatrix& a) {
    if (o.k <= 0) {
        throw UsageError("--k is required");
    }
    if (o.k > std::min(a.rows(), a.cols())) {
        throw UsageError("--k exceeds min(m, n) = " + std::to_string(std::min(a.rows(), a.cols())));
    }
    return o.k;
}

SketchConfig sketch_config(const Options& o, Index m) {
    SketchConfig s;
    s.block_size = o.b;
    s.oversample = o.p;
    s.seed = o.seed;
    s.update_rule = o.update == 2 ? UpdateRule::Formula2 : UpdateRule::Formula1;
    return s.fitted_to(m);
}

json sketch_json(const SketchConfig& s) {
    return {{"b", s.block_size},
            {"p", s.oversample},
            {"seed", s.seed},
            {"update", s.update_rule == UpdateRule::Formula1 ? 1 : 2}};
}

SRQRConfig srqr_config(const Options& o, const DenseMatrix& a, Index k) {
    SRQRConfig c;
    c.k = k;
    c.l = o.l > 0 ? o.l : k;
    c.g = o.g;
    c.d = o.d;
    c.sketch = sketch_config(o, a.rows());
    c.initial = o.initial == "classical" ? InitialPivoting::Classical : InitialPivoting::Randomized;
    c.max_swaps = o.max_swaps;
    c.exact_g2 = o.exact_g2;
    c.spectral_diagnostics = o.spectral;
    return c;
}

json srqr_json(const SRQRConfig& c) {
    return {{"k", c.k},
            {"l", c.l},
            {"g", c.g},
            {"d", c.d},
            {"sketch", sketch_json(c.sketch)},
            {"initial", c.initial == InitialPivoting::Classical ? "classical" : "randomized"},
            {"max_swaps", c.swap_cap()},
            {"exact_g2", c.exact_g2},
            {"spectral_diagnostics", c.spectral_diagnostics}};
}

double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& approx) {
    const double na = a.frobenius_norm();
    return na > 0.0 ? subtract(a, approx).frobenius_norm() / na : 0.0;
}

void add_factorization_checks(Report& rep, const Options& o, double residual, double recon) {
    rep.check("reconstruction", recon, 1e-10, recon <= 1e-10);
    if (o.max_residual) {
        rep.check("max_residual", residual, *o.max_residual, residual <= *o.max_residual);
    }
}

Report cmd_qrcp(const Options& o) {
    Report rep;
    const Input in = load_input(o);
    const Index k = o.k > 0 ? require_k(o, in.a) : std::min(in.a.rows(), in.a.cols());
    const PivotedQRFactorization f = qrcp(in.a, k);
    const double residual = truncated_residual(f, in.a);
    const double recon = reconstruction_error(f, in.a);
    rep.input = in.desc;
    rep.config = {{"k", k}};
    rep.metrics = {{"residual", real(residual)}, {"reconstruction_error", real(recon)}, {"steps", f.steps}};
    rep.extra["permutation"] = f.pi;
    rep.table = {{"k", "residual", "reconstruction_error"}, {{double(k), residual, recon}}};
    add_factorization_checks(rep, o, residual, recon);
    return rep;
}

Report cmd_rqrcp(const Options& o) {
    Report rep;
    const Input in = load_input(o);
    const Index k = require_k(o, in.a);
    const SketchConfig s = sketch_config(o, in.a.rows());
    const RQRCPResult r = rqrcp(in.a, k, s);
    const double residual = truncated_residual(r, in.a);
    const double recon = reconstruction_error(r.factorization, in.a);
    rep.input = in.desc;
    rep.config = {{"k", k}, {"sketch", sketch_json(s)}};
    rep.metrics = {{"residual", real(residual)},
                   {"reconstruction_error", real(recon)},
                   {"achieved_rank", r.achieved_rank},
                   {"flops", r.flops}};
    rep.extra["permutation"] = r.factorization.pi;
    rep.extra["sketch_trace"] = r.sketch_trace;
    rep.table = {{"k", "residual", "reconstruction_error", "achieved_rank", "flops_total"},
                 {{double(k), residual, recon, double(r.achieved_rank), r.flops.total()}}};
    add_factorization_checks(rep, o, residual, recon);
    return rep;
}

Report cmd_srqr(const Options& o) {
    Report rep;
    const Input in = load_input(o);
    const Index k = require_k(o, in.a);
    const SRQRConfig cfg = srqr_config(o, in.a, k);
    const SRQRResult r = srqr::srqr(in.a, cfg);
    const double residual = truncated_residual(r.factorization, in.a);
    const double recon = reconstruction_error(r.factorization, in.a);
    const SRQRDiagnostics& dg = r.diagnostics;
    rep.input = in.desc;
    rep.config = srqr_json(cfg);
    rep.metrics = {{"residual", real(residual)},
                   {"reconstruction_error", real(recon)},
                   {"swaps", dg.swaps},
                   {"certified", dg.certified},
                   {"g1", real(dg.g1)},
                   {"g2_estimate", real(dg.g2_estimate)},
                   {"flops", r.flops}};
    rep.extra["diagnostics"] = dg;
    rep.extra["permutation"] = r.factorization.pi;
    rep.table = {{"k", "l", "residual", "reconstruction_error", "swaps", "g1", "g2_estimate", "certified"},
                 {{double(cfg.k), double(cfg.l), residual, recon, double(dg.swaps), dg.g1, dg.g2_estimate,
                   dg.certified ? 1.0 : 0.0}}};
    rep.check("certified", dg.g2_estimate, cfg.g, dg.certified);
    add_factorization_checks(rep, o, residual, recon);
    if (o.verify) {
        const BoundReport b = verify_bounds(r.factorization, r.truncated, in.a);
        rep.extra["bounds"] = b;
        for (const BoundCheck& c : b.checks) {
            rep.check("bound." + c.name, c.lhs, c.rhs, c.pass);
        }
    }
    return rep;
}

SRQRConfig selection_config(const Options& o, const DenseMatrix& a, Index c) {
    const Index k = o.k > 0 ? o.k : std::min(c, std::min(a.rows(), a.cols()));
    return srqr_config(o, a, k);
}

Index require_count(Index v, Index limit, const char* flag) {
    if (v <= 0 || v > limit) {
        throw UsageError(std::string(flag) + " must be in [1, " + std::to_string(limit) + "]");
    }
    return v;
}

Report cmd_cur(const Options& o) {
    Report rep;
    const Input in = load_input(o);
    const Index c = require_count(o.c, in.a.cols(), "--c");
    const Index r = require_count(o.r > 0 ? o.r : c, in.a.rows(), "--r");
    const SRQRConfig cfg = selection_config(o, in.a, c);
    const CURDecomposition d = cur(in.a, c, r, cfg);
    const double residual = relative_frobenius_error(in.a, d.reconstruct(in.a));
    rep.input = in.desc;
    rep.config = {{"c", c}, {"r", r}, {"srqr", srqr_json(cfg)}};
    rep.metrics = {{"residual", real(residual)}};
    rep.extra["cur"] = d;
    rep.table = {{"c", "r", "residual"}, {{double(c), double(r), residual}}};
    rep.check("finite_residual", residual, 0.0, std::isfinite(residual));
    if (o.max_residual) {
        rep.check("max_residual", residual, *o.max_residual, residual <= *o.max_residual);
    }
    return rep;
}

Report cmd_cx(const Options& o) {
    Report rep;
    const Input in = load_input(o);
    const Index c = require_count(o.c, in.a.cols(), "--c");
    const SRQRConfig cfg = selection_config(o, in.a, c);
    const CXDecomposition d = cx(in.a, c, cfg);
    const double residual = relative_frobenius_error(in.a, d.reconstruct(in.a));
    rep.input = in.desc;
    rep.config = {{"c", c}, {"srqr", srqr_json(cfg)}};
    rep.metrics = {{"residual", real(residual)}};
    rep.extra["cx"] = d;
    rep.table = {{"c", "residual"}, {{double(c), residual}}};
    rep.check("finite_residual", residual, 0.0, std::isfinite(residual));
    if (o.max_residual) {
        rep.check("max_residual", residual, *o.max_residual, residual <= *o.max_residual);
    }
    return rep;
}

Report cmd_kahan_bench(const Options& o) {
    Report rep;
    const std::vector<Index> sizes = o.sizes.empty() ? std::vector<Index>{96, 192} : o.sizes;
    rep.input = {{"source", "kahan"}, {"sizes", sizes}, {"c", o.kahan_c}};
    rep.table.header = {"n", "k", "srqr_residual", "qrcp_residual", "srqr_min_sigma_ratio", "qrcp_last_sigma_ratio",
                        "swaps"};
    json rows = json::array();
    for (const Index n : sizes) {
        if (n < 6) {
            throw UsageError("--sizes entries must be at least 6");
        }
        const DenseMatrix a = kahan(KahanSpec::standard(n, o.kahan_c));
        const Index k = n - 1;
        Options local = o;
        local.l = 0;
        const SRQRConfig cfg = srqr_config(local, a, k);
        const SRQRResult s = srqr::srqr(a, cfg);
        const PivotedQRFactorization q = qrcp(a, k);
        const auto sa = singular_values(a);
        const auto ss = singular_values(s.factorization.r11());
        const auto sq = singular_values(q.r11());
        double min_ratio = 1.0 / 0.0;
        for (Index j = k - 5; j < k; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            min_ratio = std::min(min_ratio, ss[ju] / sa[ju]);
        }
        const auto last = static_cast<std::size_t>(k - 1);
        const double qrcp_ratio = sq[last] / sa[last];
        const double rs = truncated_residual(s.factorization, a);
        const double rq = truncated_residual(q, a);
        rows.push_back({{"n", n},
                        {"k", k},
                        {"srqr_residual", real(rs)},
                        {"qrcp_residual", real(rq)},
                        {"srqr_min_sigma_ratio", real(min_ratio)},
                        {"qrcp_last_sigma_ratio", real(qrcp_ratio)},
                        {"swaps", s.diagnostics.swaps},
                        {"certified", s.diagnostics.certified}});
        rep.table.rows.push_back({double(n), double(k), rs, rq, min_ratio, qrcp_ratio, double(s.diagnostics.swaps)});
        const std::string tag = "n" + std::to_string(n) + ".";
        rep.check(tag + "srqr_residual", rs, 1e-10, rs <= 1e-10);
        rep.check(tag + "qrcp_residual", rq, 1e-6, rq >= 1e-6);
        rep.check(tag + "srqr_min_sigma_ratio", min_ratio, 0.99, min_ratio >= 0.99);
        rep.check(tag + "qrcp_last_sigma_ratio", qrcp_ratio, 1e-10, qrcp_ratio <= 1e-10);
    }
    rep.config = {{"g", o.g}, {"d", o.d}, {"seed", o.seed}, {"initial", o.initial}};
    rep.metrics = {{"rows", rows}};
    return rep;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Report cmd_quality_sweep(const Options& o) {
    Report rep;
    Options local = o;
    if (o.input.empty() && o.kahan == 0 && o.m == 0 && o.n == 0) {
        local.m = 200;
        local.n = 200;
        local.matrix = "decay";
    }
    const Index trials = o.trials > 0 ? o.trials : 1;
    rep.table.header = {"trial", "k", "optimal", "qrcp", "rqrcp", "srqr"};
    std::vector<double> rq_ratio;
    std::vector<double> sr_ratio;
    json inputs = json::array();
    for (Index t = 0; t < trials; ++t) {
        local.seed = derive_seed(o.seed, static_cast<std::uint64_t>(t));
        const Input in = load_input(local);
        inputs.push_back(in.desc);
        const Index kmax = std::min(in.a.rows(), in.a.cols());
        const std::vector<Index> ks = o.ks.empty() ? std::vector<Index>{kmax / 8, kmax / 4, kmax / 2} : o.ks;
        const auto sigma = singular_values(in.a);
        const double total = in.a.frobenius_norm();
        for (const Index k : ks) {
            if (k < 1 || k > kmax) {
                throw UsageError("--ks entries must be in [1, min(m, n)]");
            }
            double tail = 0.0;
            for (std::size_t j = static_cast<std::size_t>(k); j < sigma.size(); ++j) {
                tail += sigma[j] * sigma[j];
            }
            const double optimal = total > 0.0 ? std::sqrt(tail) / total : 0.0;
            const double q = truncated_residual(qrcp(in.a, k), in.a);
            const double r = truncated_residual(rqrcp(in.a, k, sketch_config(local, in.a.rows())), in.a);
            Options so = local;
            so.l = 0;
            const double s = truncated_residual(srqr::srqr(in.a, srqr_config(so, in.a, k)).factorization, in.a);
            rep.table.rows.push_back({double(t), double(k), optimal, q, r, s});
            if (q > 0.0) {
                rq_ratio.push_back(r / q);
                sr_ratio.push_back(s / q);
            }
        }
    }
    rep.input = {{"trials", inputs}};
    rep.config = {{"trials", trials}, {"b", o.b}, {"p", o.p}, {"g", o.g}, {"seed", o.seed}};
    json rows = json::array();
    for (const auto& row : rep.table.rows) {
        json j;
        for (std::size_t c = 0; c < row.size(); ++c) {
            j[rep.table.header[c]] = real(row[c]);
        }
        rows.push_back(j);
    }
    const double mr = rq_ratio.empty() ? 0.0 : median(rq_ratio);
    const double ms = sr_ratio.empty() ? 0.0 : median(sr_ratio);
    rep.metrics = {{"rows", rows}, {"median_rqrcp_over_qrcp", real(mr)}, {"median_srqr_over_qrcp", real(ms)}};
    rep.check("median_rqrcp_over_qrcp", mr, 1.1, mr <= 1.1);
    rep.check("median_srqr_over_qrcp", ms, 1.1, ms <= 1.1);
    return rep;
}

Report cmd_jl_bench(const Options& o) {
    Report rep;
    const Index rows = o.m > 0 ? o.m : o.b + o.p;
    const Index len = o.n > 0 ? o.n : 16;
    const Index trials = o.trials > 0 ? o.trials : 10000;
    const std::vector<double> eps = o.eps_list.empty() ? std::vector<double>{o.eps} : o.eps_list;
    for (const double e : eps) {
        if (!(e > 0.0 && e < 1.0)) {
            throw UsageError("--eps must be in (0, 1)");
        }
    }
    GaussianStream xs(derive_seed(o.seed, kMatrixStream));
    std::vector<double> x(static_cast<std::size_t>(len));
    for (double& v : x) {
        v = xs.next();
    }
    std::vector<Index> failures(eps.size(), 0);
    for (Index t = 0; t < trials; ++t) {
        GaussianStream g(derive_seed(o.seed, static_cast<std::uint64_t>(t)));
        const DenseMatrix omega = g.matrix(rows, len);
        for (std::size_t e = 0; e < eps.size(); ++e) {
            failures[e] += jl_check(x, omega, eps[e]) ? 0 : 1;
        }
    }
    rep.input = {{"source", "gaussian_vector"}, {"length", len}};
    rep.config = {{"sketch_rows", rows}, {"trials", trials}, {"seed", o.seed}};
    rep.table.header = {"eps", "sketch_rows", "failure_frequency", "failure_bound"};
    json out = json::array();
    for (std::size_t e = 0; e < eps.size(); ++e) {
        const double freq = double(failures[e]) / double(trials);
        const double bound = jl_failure_bound(rows, eps[e]);
        out.push_back({{"eps", eps[e]}, {"failure_frequency", freq}, {"failure_bound", bound}});
        rep.table.rows.push_back({eps[e], double(rows), freq, bound});
        rep.check("eps" + format_double(eps[e]) + ".frequency_within_bound", freq, bound, freq <= bound);
    }
    rep.metrics = {{"rows", out}};
    if (o.k > 0) {
        rep.metrics["min_oversampling"] = min_oversampling(len, o.k, eps.front(), o.delta);
    }
    return rep;
}

Report cmd_formula_compare(const Options& o) {
    Report rep;
    const Index trials = o.trials > 0 ? o.trials : 1;
    rep.table.header = {"trial", "identical_permutations", "residual_formula1", "residual_formula2",
                        "relative_difference", "sketch_update_flops_formula1", "sketch_update_flops_formula2"};
    bool all_identical = true;
    double worst_diff = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    json inputs = json::array();
    json rows = json::array();
    for (Index t = 0; t < trials; ++t) {
        Options local = o;
        if (trials > 1) {
            local.seed = derive_seed(o.seed, static_cast<std::uint64_t>(t));
        }
        const Input in = load_input(local);
        inputs.push_back(in.desc);
        const Index k = require_k(o, in.a);
        SketchConfig s = sketch_config(local, in.a.rows());
        s.update_rule = UpdateRule::Formula1;
        const RQRCPResult r1 = rqrcp(in.a, k, s);
        s.update_rule = UpdateRule::Formula2;
        const RQRCPResult r2 = rqrcp(in.a, k, s);
        const auto p1 = r1.factorization.pi.indices();
        const auto p2 = r2.factorization.pi.indices();
        const bool identical = std::equal(p1.begin(), p1.end(), p2.begin(), p2.end()) &&
                               r1.sketch_trace == r2.sketch_trace;
        const double res1 = truncated_residual(r1, in.a);
        const double res2 = truncated_residual(r2, in.a);
        const double diff = std::abs(res1 - res2) / std::max(res1, std::numeric_limits<double>::min());
        all_identical = all_identical && identical;
        worst_diff = std::max(worst_diff, diff);
        f1 += r1.flops.sketch_update;
        f2 += r2.flops.sketch_update;
        rows.push_back({{"identical_permutations", identical},
                        {"residual_formula1", real(res1)},
                        {"residual_formula2", real(res2)},
                        {"relative_difference", real(diff)},
                        {"flops_formula1", r1.flops},
                        {"flops_formula2", r2.flops}});
        rep.table.rows.push_back({double(t), identical ? 1.0 : 0.0, res1, res2, diff, r1.flops.sketch_update,
                                  r2.flops.sketch_update});
    }
    const double ratio = f2 > 0.0 ? f1 / f2 : 0.0;
    rep.input = trials == 1 ? inputs.front() : json{{"trials", inputs}};
    rep.config = {{"k", o.k}, {"b", o.b}, {"p", o.p}, {"seed", o.seed}, {"trials", trials}};
    rep.metrics = {{"identical_permutations", all_identical},
                   {"max_relative_residual_difference", real(worst_diff)},
                   {"sketch_update_flop_ratio", real(ratio)},
                   {"rows", rows}};
    rep.check("identical_permutations", all_identical ? 1.0 : 0.0, 1.0, all_identical);
    rep.check("residual_difference", worst_diff, 1e-10, worst_diff <= 1e-10);
    return rep;
}

}  // namespace

void Report::check(std::string name, double value, double threshold, bool pass) {
    checks.push_back({std::move(name), pass, value, threshold});
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Report run_command(const std::string& name, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    if (name == "qrcp") {
        rep = cmd_qrcp(opt);
    } else if (name == "rqrcp") {
        rep = cmd_rqrcp(opt);
    } else if (name == "srqr") {
        rep = cmd_srqr(opt);
    } else if (name == "cur") {
        rep = cmd_cur(opt);
    } else if (name == "cx") {
        rep = cmd_cx(opt);
    } else if (name == "kahan-bench") {
        rep = cmd_kahan_bench(opt);
    } else if (name == "quality-sweep") {
        rep = cmd_quality_sweep(opt);
    } else if (name == "jl-bench") {
        rep = cmd_jl_bench(opt);
    } else if (name == "formula-compare") {
        rep = cmd_formula_compare(opt);
    } else {
        throw UsageError("unknown command " + name);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json to_json(const Report& r, const std::string& command, const std::vector<std::string>& argv, const Options& opt) {
    json checks = json::array();
    for (const Check& c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", real(c.value)}, {"threshold", real(c.threshold)}});
    }
    json j = {{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"argv", argv},
              {"seed", opt.seed},
              {"input", r.input},
              {"config", r.config},
              {"metrics", r.metrics},
              {"details", r.extra.is_null() ? json::object() : r.extra},
              {"checks", checks},
              {"all_pass", r.all_pass()}};
    if (opt.timings) {
        j["timings"] = {{"seconds", r.seconds}};
    }
    return j;
}

void write_csv_table(std::ostream& out, const Table& t) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        out << (c ? "," : "") << t.header[c];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_double(row[c]);
        }
        out << '\n';
    }
}

}  // namespace srqr::cli
