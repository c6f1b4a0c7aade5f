#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "framekit_cli.hpp"

int main(int argc, char** argv)
{
    framekit::cli::ExperimentConfig cfg;
    std::vector<std::string> tol_overrides;

    CLI::App app{"framekit: operator-valued frames and framed POVMs"};
    app.add_option("command", cfg.command, "bounds | analyze | reconstruct | to-povm | validate-povm | decompose | "
                                           "to-ovf | verify-uniqueness | roundtrip | generate")
        ->required()
        ->check(CLI::IsMember(framekit::cli::commands()));
    app.add_option("--in", cfg.input_paths, "input file (repeatable)");
    app.add_option("--out", cfg.output_path, "run report JSON (stdout when omitted)");
    app.add_option("--emit", cfg.emit_path, "write the command's product (POVM, decomposition, OVF, ...)");
    app.add_option("--trace", cfg.trace_path, "reconstruct: iteration trace CSV");
    app.add_option("--seed", cfg.seed, "seed for validation sampling and generation");
    app.add_option("--rule", cfg.rule, "reference measure rule")->check(CLI::IsMember({"trace", "dyadic"}));
    app.add_option("--sequence", cfg.sequence_path, "dyadic rule vectors (default: standard basis)");
    app.add_option("--target-error", cfg.target_error, "frame algorithm stopping bound")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", cfg.max_iters, "frame algorithm iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol_overrides, "tolerance override NAME=VALUE (herm, psd, eig, inv, frame, decomp)");
    app.add_option("--kind", cfg.kind, "generate: frame or povm")->check(CLI::IsMember({"frame", "povm"}));
    app.add_option("--dim", cfg.dim, "generate: Hilbert space dimension");
    app.add_option("--atoms", cfg.atoms, "generate: number of atoms");

    try {
        app.parse(argc, argv);
        for (const auto& item : tol_overrides) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw CLI::ValidationError("--tol", "expected NAME=VALUE, got '" + item + "'");
            }
            cfg.tolerance_overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: CommandError: " << e.what() << '\n';
        return 2;
    }

    return framekit::cli::execute(cfg, std::cout, std::cerr);
}
