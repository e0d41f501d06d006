// Runs the primary acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is 0 once every criterion has been evaluated; --strict makes any FAIL fatal.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "besov_rough/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"besov-rough acceptance suite"};
    bool strict = false;
    besov_rough::acceptance::SuiteOptions opts;
    std::string json_out;
    unsigned workers = 0;
    app.add_flag("--strict", strict, "Exit with status 1 if any criterion fails");
    app.add_option("--seed", opts.seed, "Root seed");
    app.add_option("--only", opts.only, "Criterion ids to run");
    app.add_option("--json", json_out, "Write the results as JSON");
    app.add_option("--workers", workers, "Worker cap (0 = hardware concurrency)");
    CLI11_PARSE(app, argc, argv);
    besov_rough::set_workers(workers);

    const auto results = besov_rough::acceptance::run_primary_suite(opts, [](const auto& r) {
        std::cout << besov_rough::acceptance::format_line(r) << std::endl;
    });
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    if (!json_out.empty()) std::ofstream(json_out) << besov_rough::acceptance::to_json(results).dump(2) << "\n";
    return strict && failed > 0 ? 1 : 0;
}
