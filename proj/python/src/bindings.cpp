#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "srqr/cur_cx.hpp"
#include "srqr/io.hpp"
#include "srqr/pivoted_qr.hpp"
#include "srqr/report.hpp"
#include "srqr/rqrcp.hpp"
#include "srqr/sketch.hpp"
#include "srqr/srqr.hpp"
#include "srqr/testmat.hpp"

namespace py = pybind11;
using namespace srqr;

namespace {

using Array = py::array_t<double, py::array::f_style | py::array::forcecast>;

DenseMatrix to_matrix(const Array& a) {
    if (a.ndim() != 2) {
        throw DimensionError("expected a 2-D array");
    }
    DenseMatrix m(a.shape(0), a.shape(1));
    if (m.size() > 0) {
        std::memcpy(m.data().data(), a.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
    }
    return m;
}

Array to_array(const DenseMatrix& m) {
    Array out({m.rows(), m.cols()});
    if (m.size() > 0) {
        std::memcpy(out.mutable_data(), m.data().data(), sizeof(double) * static_cast<std::size_t>(m.size()));
    }
    return out;
}

std::vector<Index> perm(const Permutation& p) { return {p.indices().begin(), p.indices().end()}; }

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SketchConfig sketch(Index b, Index p, std::uint64_t seed, int update) {
    SketchConfig s;
    s.block_size = b;
    s.oversample = p;
    s.seed = seed;
    if (update != 1 && update != 2) {
        throw DimensionError("update must be 1 or 2");
    }
    s.update_rule = update == 1 ? UpdateRule::Formula1 : UpdateRule::Formula2;
    return s;
}

py::dict factorization_dict(const PivotedQRFactorization& f, const DenseMatrix& a) {
    py::dict d;
    d["q"] = to_array(f.q.form(std::min(a.rows(), a.cols())));
    d["r"] = to_array(f.r);
    d["perm"] = perm(f.pi);
    d["steps"] = f.steps;
    d["residual"] = truncated_residual(f, a);
    return d;
}

SRQRConfig srqr_config(Index k, std::optional<Index> l, double g, Index d, Index b, Index p, std::uint64_t seed,
                       const std::string& initial, bool exact_g2, bool spectral) {
    SRQRConfig c;
    c.k = k;
    c.l = l.value_or(k);
    c.g = g;
    c.d = d;
    c.sketch = sketch(b, p, seed, 1);
    if (initial != "randomized" && initial != "classical") {
        throw DimensionError("initial must be 'randomized' or 'classical'");
    }
    c.initial = initial == "classical" ? InitialPivoting::Classical : InitialPivoting::Randomized;
    c.exact_g2 = exact_g2;
    c.spectral_diagnostics = spectral;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pivoted QR, spectrum-revealing QR and CUR/CX decompositions";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def(
        "qrcp",
        [](const Array& a, std::optional<Index> k) {
            const DenseMatrix mat = to_matrix(a);
            return factorization_dict(qrcp(mat, k.value_or(std::min(mat.rows(), mat.cols()))), mat);
        },
        py::arg("a"), py::arg("k") = py::none());

    m.def(
        "rqrcp",
        [](const Array& a, Index k, Index b, Index p, std::uint64_t seed, int update) {
            const DenseMatrix mat = to_matrix(a);
            const RQRCPResult r = rqrcp(mat, k, sketch(b, p, seed, update));
            py::dict d = factorization_dict(r.factorization, mat);
            d["achieved_rank"] = r.achieved_rank;
            d["sketch_trace"] = r.sketch_trace;
            d["flops"] = from_json(r.flops);
            return d;
        },
        py::arg("a"), py::arg("k"), py::arg("b") = 64, py::arg("p") = 10, py::arg("seed") = 0,
        py::arg("update") = 1);

    m.def(
        "srqr",
        [](const Array& a, Index k, std::optional<Index> l, double g, Index d, Index b, Index p, std::uint64_t seed,
           const std::string& initial, bool exact_g2, bool spectral, bool verify) {
            const DenseMatrix mat = to_matrix(a);
            const SRQRConfig cfg = srqr_config(k, l, g, d, b, p, seed, initial, exact_g2, spectral);
            const SRQRResult r = srqr::srqr(mat, cfg);
            py::dict out = factorization_dict(r.factorization, mat);
            out["diagnostics"] = from_json(r.diagnostics);
            out["approximation"] = to_array(r.truncated.approximation());
            if (verify) {
                out["bounds"] = from_json(verify_bounds(r.factorization, r.truncated, mat));
            }
            return out;
        },
        py::arg("a"), py::arg("k"), py::arg("l") = py::none(), py::arg("g") = 5.0, py::arg("d") = 8,
        py::arg("b") = 64, py::arg("p") = 10, py::arg("seed") = 0, py::arg("initial") = "randomized",
        py::arg("exact_g2") = false, py::arg("spectral") = false, py::arg("verify") = false);

    m.def(
        "cur",
        [](const Array& a, Index c, std::optional<Index> r, std::optional<Index> k, std::uint64_t seed) {
            const DenseMatrix mat = to_matrix(a);
            const Index kk = k.value_or(std::min(c, std::min(mat.rows(), mat.cols())));
            const CURDecomposition dec = cur(mat, c, r.value_or(c), srqr_config(kk, std::nullopt, 5.0, 8, 64, 10, seed,
                                                                                "randomized", false, false));
            py::dict out;
            out["c_cols"] = dec.c_cols;
            out["r_rows"] = dec.r_rows;
            out["u"] = to_array(dec.u);
            return out;
        },
        py::arg("a"), py::arg("c"), py::arg("r") = py::none(), py::arg("k") = py::none(), py::arg("seed") = 0);

    m.def(
        "cx",
        [](const Array& a, Index c, std::optional<Index> k, std::uint64_t seed) {
            const DenseMatrix mat = to_matrix(a);
            const Index kk = k.value_or(std::min(c, std::min(mat.rows(), mat.cols())));
            const CXDecomposition dec =
                cx(mat, c, srqr_config(kk, std::nullopt, 5.0, 8, 64, 10, seed, "randomized", false, false));
            py::dict out;
            out["c_cols"] = dec.c_cols;
            out["x"] = to_array(dec.x);
            return out;
        },
        py::arg("a"), py::arg("c"), py::arg("k") = py::none(), py::arg("seed") = 0);

    m.def(
        "kahan", [](Index n, double c) { return to_array(kahan(KahanSpec::standard(n, c))); }, py::arg("n"),
        py::arg("c") = 0.285);
    m.def(
        "decaying_spectrum",
        [](Index rows, Index cols, double ratio, std::uint64_t seed) {
            return to_array(decaying_spectrum(rows, cols, ratio, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("ratio"), py::arg("seed") = 0);
    m.def(
        "kernel_matrix",
        [](Index n, Index dim, double bandwidth, const std::string& type, std::uint64_t seed) {
            if (type != "laplacian" && type != "gaussian") {
                throw DimensionError("type must be 'laplacian' or 'gaussian'");
            }
            return to_array(kernel_matrix(n, dim, bandwidth,
                                          type == "gaussian" ? KernelType::Gaussian : KernelType::Laplacian, seed));
        },
        py::arg("n"), py::arg("dim") = 3, py::arg("bandwidth") = 0.5, py::arg("type") = "laplacian",
        py::arg("seed") = 0);
    m.def("min_oversampling", &min_oversampling, py::arg("n"), py::arg("k"), py::arg("eps"), py::arg("delta"));
    m.def(
        "load_matrix", [](const std::string& path) { return to_array(load_matrix(path)); }, py::arg("path"));
    m.def(
        "save_matrix", [](const std::string& path, const Array& a) { save_matrix(path, to_matrix(a)); },
        py::arg("path"), py::arg("a"));
    m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;
}
