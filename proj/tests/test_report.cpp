#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "eae/common.hpp"
#include "eae/report.hpp"
#include "eae/trainer.hpp"
#include "support/test_util.hpp"

using namespace eae;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config = parse_config("");
    config.dataset.pendulum.frames = 12;
    config.dataset.pendulum.height = 32;
    config.dataset.pendulum.width = 32;
    config.dataset.pendulum.rod_length = 10.0;
    config.dataset.pendulum.bob_radius = 2.0;
    config.dataset.pendulum.pivot_x = 16.0;
    config.dataset.pendulum.pivot_y = 6.0;
    config.model.hidden1 = 48;
    config.model.hidden2 = 12;
    config.model.latent = 3;
    config.train.batch = 4;
    return config;
}

std::map<std::string, std::string> read_summary(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::map<std::string, std::string> rows;
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "metric,value");
    while (std::getline(in, line)) {
        const std::size_t comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        rows[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return rows;
}

std::size_t line_count(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("evaluation reports cover metrics, diagnostics and image dumps") {
    const testutil::TempDir tmp("report");
    ExperimentConfig config = small_config();
    config.loss.kind = LossKind::entropy;
    config.loss.bins = 16;

    const Dataset dataset = build_dataset(config);
    const MlpAutoencoder model =
        init_model(dataset.sample_size(), config.model.hidden1,
                   config.model.hidden2, config.model.latent, 7);
    const auto dir = tmp / "eval";
    write_evaluation_report(dir, config, dataset, model);

    for (const char* name :
         {"summary.csv", "metrics.csv", "frequency_error.csv",
          "surprise_error_marginals.csv", "surprise_error_joint.csv",
          "manifest_ref.csv", "loss_breakdown.csv"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(dir / name));
    }

    const auto summary = read_summary(dir / "summary.csv");
    CHECK(summary.at("samples") == "12");
    for (const char* key :
         {"mse_mean", "mse_std", "psnr_mean", "psnr_std", "ssim_mean",
          "ssim_std", "mae_mean", "mae_std", "rare10_mse", "flatness"}) {
        CAPTURE(key);
        REQUIRE(summary.count(key) == 1);
        CHECK(std::isfinite(std::stod(summary.at(key))));
    }

    // Per-sample table: one row per frame plus header, mean and std.
    CHECK(line_count(dir / "metrics.csv") == 12 + 3);
    CHECK(line_count(dir / "manifest_ref.csv") == 12 + 1);
    CHECK(line_count(dir / "loss_breakdown.csv") == 12 + 1);

    // Every pixel lands in the joint histogram exactly once.
    {
        std::ifstream in(dir / "surprise_error_joint.csv");
        std::string line;
        std::getline(in, line);
        CHECK(line == "surprise_bin,error_bin,count");
        std::size_t total = 0;
        while (std::getline(in, line)) {
            const std::size_t last = line.rfind(',');
            total += static_cast<std::size_t>(
                std::stoull(line.substr(last + 1)));
        }
        CHECK(total == dataset.n * dataset.sample_size());
    }

    // Eight rare and eight common frames, each with input, output and mask.
    std::size_t images = 0;
    std::size_t masks = 0;
    for (const auto& entry :
         std::filesystem::directory_iterator(dir / "images")) {
        ++images;
        if (entry.path().filename().string().find("_mask") !=
            std::string::npos) {
            ++masks;
        }
    }
    CHECK(images == 8 * 2 * 3);
    CHECK(masks == 8 * 2);
}

TEST_CASE("plain squared-error reports skip the composite-loss extras") {
    const testutil::TempDir tmp("report");
    const ExperimentConfig config = small_config();
    const Dataset dataset = build_dataset(config);
    const MlpAutoencoder model =
        init_model(dataset.sample_size(), config.model.hidden1,
                   config.model.hidden2, config.model.latent, 7);
    const auto dir = tmp / "eval";
    write_evaluation_report(dir, config, dataset, model);

    CHECK(std::filesystem::exists(dir / "summary.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "loss_breakdown.csv"));
    for (const auto& entry :
         std::filesystem::directory_iterator(dir / "images")) {
        CHECK(entry.path().filename().string().find("_mask") ==
              std::string::npos);
    }
}

TEST_CASE("reports reject a checkpoint that does not fit the dataset") {
    const testutil::TempDir tmp("report");
    const ExperimentConfig config = small_config();
    const Dataset dataset = build_dataset(config);
    const MlpAutoencoder model = init_model(64, 32, 8, 2, 7);
    CHECK_THROWS_AS(
        write_evaluation_report(tmp / "eval", config, dataset, model),
        config_error);
}
