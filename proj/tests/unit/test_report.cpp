#include <doctest.h>

#include <limits>

#include "srqr/report.hpp"
#include "srqr/testmat.hpp"

using namespace srqr;
using nlohmann::json;

TEST_CASE("permutation round trip") {
    const Permutation p({2, 0, 3, 1});
    const json j = p;
    CHECK(j.dump() == "[2,0,3,1]");
    const Permutation q = permutation_from_json(j);
    for (Index i = 0; i < 4; ++i) {
        CHECK(q[i] == p[i]);
    }
    CHECK_THROWS(permutation_from_json(json::parse("[0,0]")));
    CHECK_THROWS(permutation_from_json(json::parse("{\"a\":1}")));
}

TEST_CASE("non-finite values become null") {
    BoundCheck c;
    c.name = "x";
    c.lhs = std::numeric_limits<double>::infinity();
    c.rhs = std::numeric_limits<double>::quiet_NaN();
    const json j = c;
    CHECK(j["lhs"].is_null());
    CHECK(j["rhs"].is_null());
    CHECK(j["name"] == "x");
    CHECK(j["evaluated"] == true);
}

TEST_CASE("diagnostics fields") {
    SRQRConfig cfg;
    cfg.k = 4;
    cfg.l = 6;
    cfg.exact_g2 = true;
    const SRQRResult r = srqr::srqr(decaying_spectrum(30, 20, 0.7, 1), cfg);
    const json j = r.diagnostics;
    for (const char* key : {"g1", "g2_estimate", "g2_exact", "alpha", "swaps", "tau_cap", "tau_hat_cap", "tau",
                            "tau_hat", "tau_bar", "certified", "degenerate", "swap_cap_exceeded", "g2_history"}) {
        CAPTURE(key);
        CHECK(j.contains(key));
    }
    CHECK(j["tau"].is_null());
    CHECK(j["g2_exact"].is_number());
    CHECK(j["swaps"] == r.diagnostics.swaps);

    const json f = r.flops;
    CHECK(f["total"].get<double>() == doctest::Approx(r.flops.total()));
}

TEST_CASE("bound report") {
    BoundReport rep;
    rep.checks.push_back({"a", 1.0, 2.0, true, 0.5, -1, true});
    rep.checks.push_back({"b", 3.0, 2.0, false, -0.5, 4, true});
    const json j = rep;
    CHECK(j["all_pass"] == false);
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["worst_index"] == 4);
}

TEST_CASE("CUR and CX summaries") {
    CURDecomposition d;
    d.c_cols = {1, 2};
    d.r_rows = {0};
    d.u = DenseMatrix(2, 1);
    const json j = d;
    CHECK(j["c_cols"].dump() == "[1,2]");
    CHECK(j["r_rows"].dump() == "[0]");
    CXDecomposition x;
    x.c_cols = {3};
    const json jx = x;
    CHECK(jx["c_cols"].dump() == "[3]");
}
