#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "adjpair/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Adjoint pairs and normal extensions of diagonal multiplication operators"};
    app.set_version_flag("--version", std::string(adjpair::kToolVersion));
    app.require_subcommand(1);

    std::string model_file;
    std::string out_file;
    std::string figure_file;
    adjpair::RunOptions options;
    double tol = 0.0;
    std::uint64_t seed = 0;

    for (const auto& [name, help] : {
             std::pair{"validate", "Check the model and report ‖ξ‖²"},
             std::pair{"green-check", "Green identity on seeded random element pairs"},
             std::pair{"check-subspace", "Normality of T_C for the model's subspace C"},
             std::pair{"classify", "One-dimensional classification (line x - ty = s or canonical only)"},
             std::pair{"oracle-scan", "Brute-force γ scan of the normality equation"},
             std::pair{"report", "All of the above"},
         }) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--model", model_file, "Model JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--tol", tol, "Inner-product tolerance (overrides the model file)");
        sub->add_option("--seed", seed, "Random seed (overrides the model file)");
        sub->add_flag("--assert", options.assert_verdicts, "Exit 1 when a verdict is failed or not normal");
        sub->add_option("--out", out_file, "Write the report here instead of stdout");
        sub->add_flag("--timings", options.timings, "Include wall-clock timings");
        sub->add_option("--pairs", options.pairs, "Random pairs for green-check")->capture_default_str();
        sub->add_option("--grid", options.grid, "γ grid size for oracle-scan")->capture_default_str();
        sub->add_option("--truncation", options.truncation, "Explicit terms in oracle-scan")->capture_default_str();
        sub->add_option("--verify-to", options.verify_to, "Atoms checked by classify for generic rules")
            ->capture_default_str();
        sub->add_option("--figure", figure_file, "Write an SVG of the atoms and fitted line");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto* sub = app.get_subcommands().front();
    if (sub->count("--tol")) options.tol = tol;
    if (sub->count("--seed")) options.seed = seed;
    if (!figure_file.empty()) options.figure = figure_file;

    const auto command = adjpair::parse_command(sub->get_name());
    const auto result = adjpair::run(*command, model_file, options);
    const std::string text = adjpair::emit_report(result.report);
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!(out << text)) {
            std::cerr << "cannot write " << out_file << "\n";
            return 2;
        }
    }
    if (result.report.error) std::cerr << result.report.error->kind << ": " << result.report.error->message << "\n";
    return result.exit_code;
}
