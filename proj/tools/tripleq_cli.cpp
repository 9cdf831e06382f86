#include <CLI11.hpp>

#include <iostream>

#include "tripleq/commands.hpp"

int main(int argc, char** argv) {
    tripleq::RunConfig cfg;
    std::vector<std::string> positional;

    CLI::App app{"q-expansion calculus for triple products at finite slope"};
    app.add_option("command", cfg.command, "command to run")
        ->required()
        ->check(CLI::IsMember(tripleq::command_names()));
    app.add_option("params", positional, "key=value parameters");
    app.add_option("--p", cfg.p, "prime; must match the input headers");
    app.add_option("--prec", cfg.M, "p-adic precision M; must match the input headers");
    app.add_option("--qprec", cfg.Q, "q-adic truncation Q; must match the input headers");
    app.add_option("--cmp-prec", cfg.cmp_prec, "comparison precision, at most M (default M - 2)");
    app.add_option("--seed", cfg.seed, "seed for randomized commands");
    app.add_option("--in", cfg.inputs, "input file; repeat the flag for several, order matters")->allow_extra_args(false);
    app.add_option("--out", cfg.output, "write the result file here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return tripleq::kExitInput;
    }

    for (const auto& kv : positional) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "expected key=value, got '" << kv << "'\n";
            return tripleq::kExitInput;
        }
        if (!cfg.params.emplace(kv.substr(0, eq), kv.substr(eq + 1)).second) {
            std::cerr << "repeated parameter '" << kv.substr(0, eq) << "'\n";
            return tripleq::kExitInput;
        }
    }

    const tripleq::Report report = tripleq::run_command(cfg);
    std::cout << report.text();
    return report.exit_code;
}
