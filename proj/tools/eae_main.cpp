#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eae/commands.hpp"
#include "eae/common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entropy-weighted autoencoder toolkit"};
    app.require_subcommand(1);

    eae::CliOptions options;
    std::string config_path;
    std::string checkpoint;
    std::vector<std::string> report_dirs;
    std::string compare_out;
    bool compare_quiet = false;

    const auto add_common = [&](CLI::App* cmd, bool with_seed) {
        cmd->add_option("--config", config_path, "experiment config file")
            ->required();
        cmd->add_option("--out", options.out_override,
                        "output directory (overrides the config)");
        cmd->add_flag("--quiet", options.quiet, "suppress progress output");
        if (with_seed) {
            cmd->add_option("--seed", options.seed_overrides,
                            "training seed, repeatable (overrides the config)");
        }
    };

    CLI::App* generate =
        app.add_subcommand("generate", "write the simulated dataset to disk");
    add_common(generate, false);

    CLI::App* train = app.add_subcommand("train", "train one run per seed");
    add_common(train, true);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "reconstruct the dataset with a checkpoint and report");
    add_common(evaluate, false);
    evaluate->add_option("checkpoint", checkpoint, "model checkpoint file")
        ->required();

    CLI::App* compare = app.add_subcommand(
        "compare", "tabulate several evaluation reports side by side");
    compare->add_option("reports", report_dirs, "evaluation report directories")
        ->required()
        ->expected(2, -1);
    compare->add_option("--out", compare_out, "directory for comparison.csv");
    compare->add_flag("--quiet", compare_quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
        options.config_path = config_path;
        if (generate->parsed()) {
            eae::cmd_generate(options);
        } else if (train->parsed()) {
            eae::cmd_train(options);
        } else if (evaluate->parsed()) {
            eae::cmd_evaluate(options, checkpoint);
        } else if (compare->parsed()) {
            std::vector<std::filesystem::path> dirs(report_dirs.begin(),
                                                    report_dirs.end());
            eae::cmd_compare(dirs, compare_out, compare_quiet);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const eae::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
