// mb-lab — batch front-end for the coupled-KdV numerical laboratory.
//
//   mb-lab <command> [--config FILE] [--seed S] [--out DIR] [--set key=value]...
//
// Commands: lemmas | resonance | growth | solve | crosscheck | report.
// Exit status: 0 pass, 1 numeric criterion failed, 2 usage/schema error.

#include <CLI11.hpp>

#include "mblab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mb-lab: coupled KdV resonance / norm-inflation laboratory"};
    app.require_subcommand(1);

    mblab::RunOptions opt;
    for (const char* name :
         {"lemmas", "resonance", "growth", "solve", "crosscheck", "report"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "key=value configuration file");
        sub->add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
        sub->add_option("--out", opt.out_dir, "output directory (default $MB_LAB_OUT or ./out)");
        sub->add_option("--set", opt.overrides, "key=value override (repeatable)");
        sub->callback([&opt, name]() { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return mblab::run_command(opt);
}
