#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "srqr/common.hpp"

using namespace srqr;
using namespace srqr::cli;

namespace {

void add_input_flags(CLI::App* app, Options& o) {
    app->add_option("--input", o.input, "Matrix file (.mtx Matrix Market, otherwise CSV)")->check(CLI::ExistingFile);
    app->add_option("--input-format", o.input_format, "Input format")
        ->check(CLI::IsMember({"auto", "mtx", "csv"}));
    app->add_option("--kahan", o.kahan, "Use the Kahan matrix of this order")->check(CLI::PositiveNumber);
    app->add_option("--kahan-c", o.kahan_c, "Kahan parameter c")->check(CLI::Range(0.0, 1.0));
    app->add_option("--m", o.m, "Rows of the synthetic matrix")->check(CLI::PositiveNumber);
    app->add_option("--n", o.n, "Columns of the synthetic matrix")->check(CLI::PositiveNumber);
    app->add_option("--matrix", o.matrix, "Synthetic matrix family")
        ->check(CLI::IsMember({"gaussian", "decay", "lowrank", "kernel", "gauss-kernel"}));
    app->add_option("--decay", o.decay, "Singular value ratio for --matrix decay")->check(CLI::Range(0.0, 1.0));
    app->add_option("--rank", o.rank, "Rank for --matrix lowrank")->check(CLI::PositiveNumber);
    app->add_option("--bandwidth", o.bandwidth, "Kernel bandwidth")->check(CLI::PositiveNumber);
}

void add_sketch_flags(CLI::App* app, Options& o) {
    app->add_option("--b", o.b, "Block size")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--p", o.p, "Oversampling")->capture_default_str()->check(CLI::NonNegativeNumber);
    app->add_option("--update", o.update, "Sketch update formula")->capture_default_str()->check(CLI::IsMember({1, 2}));
}

void add_srqr_flags(CLI::App* app, Options& o) {
    app->add_option("--l", o.l, "Working rank (default k)")->check(CLI::PositiveNumber);
    app->add_option("--g", o.g, "Tolerance for g2")->capture_default_str()->check(CLI::Range(1.0, 1e300));
    app->add_option("--d", o.d, "Rows of the g2 probe")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--initial", o.initial, "Initial pivoting")
        ->capture_default_str()
        ->check(CLI::IsMember({"randomized", "classical"}));
    app->add_option("--max-swaps", o.max_swaps, "Swap cap (default 3l)");
    app->add_flag("--exact-g2", o.exact_g2, "Also compute g2 exactly");
}

void add_output_flags(CLI::App* app, Options& o) {
    app->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    app->add_option("--format", o.format, "Report format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "Write the report to this file instead of stdout");
    app->add_flag("--assert", o.assert_checks, "Exit 1 if any check fails");
    app->add_flag("!--no-timings", o.timings, "Omit wall-clock timings from the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pivoted QR factorizations, spectrum-revealing QR and CUR/CX experiments"};
    app.require_subcommand(1);
    Options o;
    std::vector<std::string> args(argv, argv + argc);

    struct Spec {
        const char* name;
        const char* help;
    };
    const Spec specs[] = {
        {"qrcp", "QR with column pivoting"},
        {"rqrcp", "Randomized QR with column pivoting"},
        {"srqr", "Spectrum-revealing QR"},
        {"cur", "CUR decomposition from SRQR pivots"},
        {"cx", "CX decomposition from SRQR pivots"},
        {"kahan-bench", "SRQR against QRCP on Kahan matrices"},
        {"quality-sweep", "Residuals of QRCP, RQRCP and SRQR over target ranks"},
        {"jl-bench", "Empirical Johnson-Lindenstrauss failure frequency"},
        {"formula-compare", "Compare the two sketch update formulas"},
    };
    for (const Spec& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        const std::string name = s.name;
        add_output_flags(sub, o);
        if (name == "jl-bench") {
            sub->add_option("--m", o.m, "Sketch rows (default b+p)")->check(CLI::PositiveNumber);
            sub->add_option("--n", o.n, "Vector length")->check(CLI::PositiveNumber);
            sub->add_option("--b", o.b, "Block size")->capture_default_str()->check(CLI::PositiveNumber);
            sub->add_option("--p", o.p, "Oversampling")->capture_default_str()->check(CLI::NonNegativeNumber);
            sub->add_option("--eps", o.eps_list, "Distortion levels")->check(CLI::Range(0.0, 1.0));
            sub->add_option("--delta", o.delta, "Failure probability for the oversampling bound")
                ->capture_default_str()
                ->check(CLI::Range(0.0, 1.0));
            sub->add_option("--k", o.k, "Target rank for the oversampling bound")->check(CLI::PositiveNumber);
            sub->add_option("--trials", o.trials, "Number of sketches")->check(CLI::PositiveNumber);
            continue;
        }
        if (name == "kahan-bench") {
            sub->add_option("--sizes", o.sizes, "Kahan orders")->delimiter(',');
            sub->add_option("--kahan-c", o.kahan_c, "Kahan parameter c")->check(CLI::Range(0.0, 1.0));
            add_sketch_flags(sub, o);
            add_srqr_flags(sub, o);
            continue;
        }
        add_input_flags(sub, o);
        sub->add_option("--k", o.k, "Target rank")->check(CLI::PositiveNumber);
        if (name != "qrcp") {
            add_sketch_flags(sub, o);
        }
        if (name == "srqr" || name == "cur" || name == "cx" || name == "quality-sweep") {
            add_srqr_flags(sub, o);
        }
        if (name == "srqr") {
            sub->add_flag("--verify", o.verify, "Evaluate the singular value and residual bounds");
            sub->add_flag("--spectral", o.spectral, "Compute tau, tau_hat and tau_bar from the SVD of A");
        }
        if (name == "cur" || name == "cx") {
            sub->add_option("--c", o.c, "Columns to select")->required()->check(CLI::PositiveNumber);
        }
        if (name == "cur") {
            sub->add_option("--r", o.r, "Rows to select (default c)")->check(CLI::PositiveNumber);
        }
        if (name == "quality-sweep") {
            sub->add_option("--ks", o.ks, "Target ranks")->delimiter(',');
        }
        if (name == "quality-sweep" || name == "formula-compare") {
            sub->add_option("--trials", o.trials, "Number of seeded instances")->check(CLI::PositiveNumber);
        }
        if (name != "quality-sweep") {
            sub->add_option("--max-residual", o.max_residual, "Add a check residual <= value");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Report rep = run_command(command, o);
        std::ofstream file;
        if (!o.out.empty()) {
            file.open(o.out);
            if (!file) {
                std::cerr << "error: cannot write " << o.out << '\n';
                return kExitFailure;
            }
        }
        std::ostream& out = o.out.empty() ? std::cout : file;
        if (o.format == "csv") {
            write_csv_table(out, rep.table);
        } else {
            out << to_json(rep, command, args, o).dump(2) << '\n';
        }
        for (const Check& c : rep.checks) {
            if (!c.pass) {
                std::cerr << "check failed: " << c.name << " (value " << c.value << ", threshold " << c.threshold
                          << ")\n";
            }
        }
        return o.assert_checks && !rep.all_pass() ? kExitFailure : kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
