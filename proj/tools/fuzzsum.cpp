// fuzzsum: classify fuzzy function sequences and reproduce the worked examples.

#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fuzzsum/cli.hpp"
#include "fuzzsum/report_io.hpp"
#include "fuzzsum/spec_parse.hpp"

namespace fc = fuzzsum::cli;

int main(int argc, char** argv) {
    CLI::App app{"Weighted statistical convergence and summability for fuzzy function sequences", "fuzzsum"};
    app.require_subcommand(1);

    fc::RunConfig cfg;
    std::string thetas = "1";
    std::string modes = "sp,abs,ord";
    fuzzsum::Index horizon = 0;

    auto* run = app.add_subcommand("run", "Classify one family and write CSV/JSON reports");
    run->add_option("--family", cfg.family, "ex3.1[:M=], ex3.2, ex3.3, ex4.1, remark3:n=[,M=], recip, file:<path>")
        ->required();
    run->add_option("--scheme", cfg.scheme, "classical, pow:<p>, lambda:<n|sqrt|log2>, lacunary:pow<b>, file:<path>")
        ->capture_default_str();
    run->add_option("--weights", cfg.weights, "const:<c>, recip5, harmonicplus, file:<path>")
        ->capture_default_str();
    run->add_option("--theta", thetas, "comma-separated orders in (0, 1]")->capture_default_str();
    run->add_option("--eps", cfg.eps, "statistical threshold")->capture_default_str();
    run->add_option("--grid", cfg.grid, "a,b,count")->capture_default_str();
    run->add_option("--horizon", horizon, "last n (default depends on family)");
    run->add_option("--modes", modes, "subset of sp,abs,ord,tauberian")->capture_default_str();
    run->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    run->add_option("--json", cfg.json_name, "JSON report file name")->capture_default_str();
    run->add_option("--csv", cfg.csv_name, "CSV trace file name")->capture_default_str();

    fc::ReproduceOptions repro;
    fuzzsum::Index repro_horizon = 0;
    std::string only;
    auto* reproduce = app.add_subcommand("reproduce", "Run the canned example table");
    reproduce->add_option("--horizon", repro_horizon, "override every canned horizon");
    reproduce->add_option("--only", only, "ex3.1, ex3.2, ex3.3, ex4.1 or remark3");

    if (argc <= 1) {
        std::cerr << app.help();
        return fc::kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? fc::kExitOk : fc::kExitUsage;
    }

    try {
        if (*run) {
            cfg.thetas = fuzzsum::parse_real_list(thetas);
            cfg.modes = fuzzsum::split_list(modes);
            if (horizon != 0) {
                cfg.horizon = horizon;
            }
            return fc::run(cfg, std::cout, std::cerr);
        }
        if (repro_horizon != 0) {
            repro.horizon = repro_horizon;
        }
        if (!only.empty()) {
            repro.only = only;
        }
        return fc::reproduce_table(repro, std::cout, std::cerr);
    } catch (const fuzzsum::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fc::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fc::kExitConfig;
    }
}
