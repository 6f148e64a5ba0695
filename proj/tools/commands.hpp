#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srqr/matrix.hpp"

namespace srqr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for argument combinations CLI11 cannot check by itself.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    // Input: exactly one of a file, a Kahan order, or a synthetic m×n matrix.
    std::string input;
    std::string input_format = "auto";
    Index kahan = 0;
    double kahan_c = 0.285;
    Index m = 0;
    Index n = 0;
    std::string matrix = "gaussian";
    double decay = 0.9;
    Index rank = 10;
    double bandwidth = 0.5;

    Index k = 0;
    Index l = 0;
    Index b = 64;
    Index p = 10;
    double g = 5.0;
    Index d = 8;
    double eps = 0.5;
    double delta = 0.05;
    std::uint64_t seed = 0;
    int update = 1;
    std::string initial = "randomized";
    Index max_swaps = -1;
    bool exact_g2 = false;
    bool verify = false;
    bool spectral = false;

    Index c = 0;
    Index r = 0;
    Index trials = 0;
    std::vector<Index> sizes;
    std::vector<Index> ks;
    std::vector<double> eps_list;

    std::string format = "json";
    std::string out;
    std::optional<double> max_residual;
    bool assert_checks = false;
    bool timings = true;
};

struct Check {
    std::string name;
    bool pass = true;
    double value = 0.0;
    double threshold = 0.0;
};

/// One metric table for the CSV output (sweeps have many rows, single runs one).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Report {
    nlohmann::json input;
    nlohmann::json config;
    nlohmann::json metrics;
    nlohmann::json extra;  // permutations, diagnostics, bound checks
    std::vector<Check> checks;
    Table table;
    double seconds = 0.0;

    void check(std::string name, double value, double threshold, bool pass);
    bool all_pass() const;
};

Report run_command(const std::string& name, const Options& opt);

nlohmann::json to_json(const Report& r, const std::string& command, const std::vector<std::string>& argv,
                       const Options& opt);
void write_csv_table(std::ostream& out, const Table& t);

}  // namespace srqr::cli
