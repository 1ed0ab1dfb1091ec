#include "eae/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eae/checkpoint.hpp"
#include "eae/common.hpp"
#include "eae/config.hpp"
#include "eae/pgm.hpp"
#include "eae/report.hpp"
#include "eae/trainer.hpp"

namespace eae {

namespace {

ExperimentConfig effective_config(const CliOptions& options) {
    ExperimentConfig config = load_config(options.config_path);
    if (!options.out_override.empty()) config.out_dir = options.out_override;
    if (!options.seed_overrides.empty()) {
        config.train.seeds = options.seed_overrides;
    }
    return config;
}

std::string padded(std::size_t value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

void cmd_generate(const CliOptions& options) {
    const ExperimentConfig config = effective_config(options);
    if (config.dataset.kind != "simulated") {
        throw config_error(
            "generate only produces simulated datasets; this config uses "
            "dataset.kind = " +
            config.dataset.kind);
    }

    const Dataset dataset = build_dataset(config);
    const RarityTable rarity = rarity_bins(dataset, config.dataset.rarity_bins);

    const std::filesystem::path out_dir(config.out_dir);
    std::filesystem::create_directories(out_dir);

    const ImageBatch frames = dataset.full_batch();
    for (std::size_t i = 0; i < dataset.n; ++i) {
        write_pnm(out_dir / ("frame_" + padded(i, 5) + ".pgm"), frames, i);
    }

    std::ofstream manifest(out_dir / "manifest.csv", std::ios::trunc);
    if (!manifest) {
        throw io_error("cannot write " + (out_dir / "manifest.csv").string());
    }
    manifest << "index,angle,bin,count\n";
    for (std::size_t i = 0; i < dataset.n; ++i) {
        manifest << i << ',' << fmt_double(dataset.angles[i]) << ','
                 << rarity.bin[i] << ',' << rarity.sample_count[i] << '\n';
    }

    if (!options.quiet) {
        std::printf("wrote %zu frames and manifest.csv to %s\n", dataset.n,
                    out_dir.string().c_str());
    }
}

void cmd_train(const CliOptions& options) {
    const ExperimentConfig config = effective_config(options);
    const Dataset dataset = build_dataset(config);
    for (std::uint64_t seed : config.train.seeds) {
        const TrainOutcome outcome =
            train_single_run(config, seed, dataset, options.quiet);
        if (!options.quiet) {
            std::printf("seed %llu done, final loss %.6f, checkpoint %s\n",
                        static_cast<unsigned long long>(seed),
                        outcome.final_epoch_loss,
                        outcome.checkpoint.string().c_str());
        }
    }
}

void cmd_evaluate(const CliOptions& options,
                  const std::filesystem::path& checkpoint) {
    const ExperimentConfig config = effective_config(options);
    const MlpAutoencoder model = load_checkpoint(checkpoint);
    const Dataset dataset = build_dataset(config);
    const std::filesystem::path dir =
        options.out_override.empty()
            ? std::filesystem::path(config.out_dir) / "eval"
            : std::filesystem::path(options.out_override);
    write_evaluation_report(dir, config, dataset, model);
    if (!options.quiet) {
        std::printf("evaluation report written to %s\n", dir.string().c_str());
    }
}

void cmd_compare(const std::vector<std::filesystem::path>& reports,
                 const std::string& out_dir, bool quiet) {
    if (reports.size() < 2) {
        throw config_error("compare needs at least two report directories");
    }
    for (const auto& dir : reports) {
        if (!std::filesystem::is_directory(dir)) {
            throw io_error("missing report directory " + dir.string());
        }
    }

    const std::string reference_manifest = read_file(reports[0] / "manifest_ref.csv");
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (read_file(reports[i] / "manifest_ref.csv") != reference_manifest) {
            throw config_error("report " + reports[i].string() +
                               " was produced on a different dataset than " +
                               reports[0].string());
        }
    }

    // metric name -> value per report, in summary.csv row order
    std::vector<std::vector<std::pair<std::string, double>>> tables;
    for (const auto& dir : reports) {
        std::istringstream in(read_file(dir / "summary.csv"));
        std::vector<std::pair<std::string, double>> rows;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const std::size_t comma = line.find(',');
            if (comma == std::string::npos) {
                throw io_error("malformed summary row '" + line + "' in " +
                               dir.string());
            }
            rows.emplace_back(line.substr(0, comma),
                              std::strtod(line.c_str() + comma + 1, nullptr));
        }
        tables.push_back(std::move(rows));
    }
    for (std::size_t i = 1; i < tables.size(); ++i) {
        if (tables[i].size() != tables[0].size()) {
            throw config_error("report " + reports[i].string() +
                               " lists a different metric set than " +
                               reports[0].string());
        }
        for (std::size_t r = 0; r < tables[0].size(); ++r) {
            if (tables[i][r].first != tables[0][r].first) {
                throw config_error("report " + reports[i].string() +
                                   " lists a different metric set than " +
                                   reports[0].string());
            }
        }
    }

    const std::filesystem::path out_path =
        std::filesystem::path(out_dir.empty() ? "." : out_dir) /
        "comparison.csv";
    std::filesystem::create_directories(out_path.parent_path());
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw io_error("cannot write " + out_path.string());
    out << "metric,method,value,delta_vs_first\n";
    for (std::size_t r = 0; r < tables[0].size(); ++r) {
        for (std::size_t m = 0; m < reports.size(); ++m) {
            out << tables[0][r].first << ',' << reports[m].string() << ','
                << fmt_double(tables[m][r].second) << ','
                << fmt_double(tables[m][r].second - tables[0][r].second)
                << '\n';
        }
    }
    if (!quiet) {
        std::printf("comparison written to %s\n", out_path.string().c_str());
    }
}

}  // namespace eae
