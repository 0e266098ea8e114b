#include <iostream>

#include "CLI11.hpp"
#include "maxrect/cli.hpp"

int main(int argc, char** argv) {
    maxrect::cli::RunConfig cfg;
    CLI::App app{"Largest inscribed rectangle of arbitrary orientation in a polygon"};
    app.add_option("--input", cfg.input, "polygon JSON {\"outer\": [[x,y],...], \"holes\": [...]}")->required();
    app.add_option("--types", cfg.types, "families to run, e.g. A,B,C or all");
    app.add_flag("--all", cfg.report_all, "report every optimal rectangle");
    std::vector<double> oracle;
    app.add_option("--oracle-check", oracle, "compare with the grid oracle: M H")->expected(2);
    app.add_option("--svg", cfg.svg, "write an SVG picture");
    app.add_option("--trace", cfg.trace, "write the staircase event trace");
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--rel-tol", cfg.rel_tol, "relative area gap still counted as optimal")->check(CLI::NonNegativeNumber);
    app.add_flag("--fix-orientation", cfg.fix_orientation, "reorient rings before validation");
    CLI11_PARSE(app, argc, argv);
    if (!oracle.empty()) {
        cfg.oracle_check = true;
        cfg.oracle_m = static_cast<int>(oracle[0]);
        cfg.oracle_h = oracle[1];
    }
    return maxrect::cli::run(cfg, std::cout, std::cerr);
}
