#include "srqr/report.hpp"

#include <cmath>
#include <vector>

namespace srqr {

namespace {

nlohmann::json real(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json optional_real(const std::optional<double>& v) { return v ? real(*v) : nlohmann::json(nullptr); }

}  // namespace

void to_json(nlohmann::json& j, const Permutation& p) {
    j = std::vector<Index>(p.indices().begin(), p.indices().end());
}

void to_json(nlohmann::json& j, const FlopCounter& f) {
    j = {{"sketch", f.sketch},
         {"panel_pivoting", f.panel_pivoting},
         {"panel_qr", f.panel_qr},
         {"trailing_update", f.trailing_update},
         {"sketch_update", f.sketch_update},
         {"total", f.total()}};
}

void to_json(nlohmann::json& j, const BoundCheck& c) {
    j = {{"name", c.name},   {"lhs", real(c.lhs)},         {"rhs", real(c.rhs)},      {"pass", c.pass},
         {"slack", real(c.slack)}, {"evaluated", c.evaluated}, {"worst_index", c.worst_index}};
}

void to_json(nlohmann::json& j, const BoundReport& r) {
    j = {{"checks", r.checks}, {"tau", real(r.tau)}, {"tau_hat", real(r.tau_hat)}, {"tau_bar", real(r.tau_bar)},
         {"g1", real(r.g1)},   {"g2", real(r.g2)},   {"all_pass", r.all_pass()}};
}

void to_json(nlohmann::json& j, const SRQRDiagnostics& d) {
    j = {{"g1", real(d.g1)},
         {"g2_estimate", real(d.g2_estimate)},
         {"g2_exact", optional_real(d.g2_exact)},
         {"alpha", real(d.alpha)},
         {"swaps", d.swaps},
         {"tau_cap", real(d.tau_cap)},
         {"tau_hat_cap", real(d.tau_hat_cap)},
         {"tau", optional_real(d.tau)},
         {"tau_hat", optional_real(d.tau_hat)},
         {"tau_bar", optional_real(d.tau_bar)},
         {"certified", d.certified},
         {"degenerate", d.degenerate},
         {"swap_cap_exceeded", d.swap_cap_exceeded},
         {"g2_history", d.g2_history}};
}

void to_json(nlohmann::json& j, const CURDecomposition& d) {
    j = {{"c_cols", d.c_cols}, {"r_rows", d.r_rows}, {"u_rows", d.u.rows()}, {"u_cols", d.u.cols()}};
}

void to_json(nlohmann::json& j, const CXDecomposition& d) {
    j = {{"c_cols", d.c_cols}, {"x_rows", d.x.rows()}, {"x_cols", d.x.cols()}};
}

Permutation permutation_from_json(const nlohmann::json& j) { return Permutation(j.get<std::vector<Index>>()); }

}  // namespace srqr
