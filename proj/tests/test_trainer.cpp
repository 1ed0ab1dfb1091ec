#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "eae/common.hpp"
#include "eae/trainer.hpp"
#include "support/test_util.hpp"

using namespace eae;

namespace {

// A pendulum small enough that a full run takes milliseconds.
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
    config.train.epochs = 2;
    return config;
}

Trainer make_trainer(const ExperimentConfig& config, std::size_t input_dim,
                     std::uint64_t seed) {
    Trainer trainer;
    trainer.model = init_model(input_dim, config.model.hidden1,
                               config.model.hidden2, config.model.latent,
                               seed);
    AdamSettings settings;
    settings.learning_rate = config.optimizer.learning_rate;
    settings.weight_decay = config.optimizer.weight_decay;
    trainer.adam = make_adam_state(trainer.model, settings);
    trainer.loss = config.loss;
    return trainer;
}

std::vector<std::string> csv_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("repeated updates on one batch reduce its loss") {
    const ExperimentConfig config = small_config();
    const Dataset dataset = build_dataset(config);
    const ImageBatch batch = dataset.gather({0, 3, 6, 9});

    Trainer trainer = make_trainer(config, dataset.sample_size(), 17);
    trainer.adam.settings.learning_rate = 1e-2;

    const auto before = trainer.eval_losses(batch);
    double first_mean = 0.0;
    for (double v : before) first_mean += v;
    first_mean /= static_cast<double>(before.size());

    for (int i = 0; i < 60; ++i) trainer.update_on(batch, false, 1e-8);

    const auto after = trainer.eval_losses(batch);
    double last_mean = 0.0;
    for (double v : after) last_mean += v;
    last_mean /= static_cast<double>(after.size());
    CHECK(last_mean < first_mean);
}

TEST_CASE("loss evaluation leaves the parameters untouched") {
    const ExperimentConfig config = small_config();
    const Dataset dataset = build_dataset(config);
    const Trainer trainer = make_trainer(config, dataset.sample_size(), 3);
    const ImageBatch batch = dataset.gather({0, 1, 2, 3});

    const std::vector<double> snapshot = trainer.model.layers[0].weight.values;
    const auto a = trainer.eval_losses(batch);
    const auto b = trainer.eval_losses(batch);
    CHECK(a == b);
    CHECK(trainer.model.layers[0].weight.values == snapshot);
}

TEST_CASE("focal updates log the weighted batch loss") {
    const ExperimentConfig config = small_config();
    const Dataset dataset = build_dataset(config);
    const ImageBatch batch = dataset.gather({0, 4, 8, 11});

    Trainer trainer = make_trainer(config, dataset.sample_size(), 5);
    const std::vector<double> before = trainer.eval_losses(batch);
    const std::vector<double> weights = focal_weights(before, 1e-8);
    const double expected = weighted_batch_loss(before, weights);

    const double logged = trainer.update_on(batch, true, 1e-8);
    CHECK(logged == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("the simulated dataset does not depend on the run seed") {
    ExperimentConfig config = small_config();
    config.dataset.pendulum.noise_std = 0.01;
    const Dataset a = build_dataset(config);
    const Dataset b = build_dataset(config);
    CHECK(a.n == config.dataset.pendulum.frames);
    CHECK(a.pixels == b.pixels);
    CHECK(a.angles == b.angles);
}

TEST_CASE("training runs are reproducible byte for byte") {
    const testutil::TempDir tmp("train");
    ExperimentConfig config = small_config();

    config.out_dir = (tmp / "a").string();
    const ExperimentConfig first_config = config;
    const TrainOutcome first = train_single_run(config, 3, build_dataset(config), true);
    config.out_dir = (tmp / "b").string();
    const TrainOutcome second = train_single_run(config, 3, build_dataset(config), true);

    CHECK(first.run_dir.filename().string() == "seed3");
    // config.ini embeds out_dir, so it is checked against its own run only.
    CHECK(testutil::read_file(first.run_dir / "config.ini") ==
          serialize_config(with_single_seed(first_config, 3)));
    for (const char* name : {"train_log.csv", "model.ckpt"}) {
        CAPTURE(name);
        CHECK(testutil::read_file(first.run_dir / name) ==
              testutil::read_file(second.run_dir / name));
    }
    CHECK(std::filesystem::exists(first.run_dir / "timing.csv"));
    CHECK_FALSE(std::filesystem::exists(first.run_dir / "spp_log.csv"));

    const auto log = csv_lines(first.run_dir / "train_log.csv");
    REQUIRE(log.size() == config.train.epochs + 1);
    CHECK(log[0] == "epoch,mean_loss");
    CHECK(split_csv(log[1])[0] == "1");
    CHECK(split_csv(log[2])[0] == "2");
    CHECK(first.final_epoch_loss ==
          std::stod(split_csv(log.back())[1]));
}

TEST_CASE("replay runs log pool sizes that reset at epoch boundaries") {
    const testutil::TempDir tmp("train");
    ExperimentConfig config = small_config();
    config.scheduler.kind = "spp";
    config.scheduler.k = 4;  // memory of one with a batch of four
    config.loss.kind = LossKind::entropy;
    config.loss.bins = 16;
    config.out_dir = (tmp / "spp").string();

    const TrainOutcome outcome =
        train_single_run(config, 1, build_dataset(config), true);
    const auto lines = csv_lines(outcome.run_dir / "spp_log.csv");
    // Two epochs of three steps each, plus the header.
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "step,pool_size,update_indices,carryover_indices,mean_loss");

    const std::vector<std::string> expected_pools = {"4", "5", "5",
                                                     "4", "5", "5"};
    for (std::size_t i = 0; i < expected_pools.size(); ++i) {
        const auto fields = split_csv(lines[i + 1]);
        REQUIRE(fields.size() == 5);
        CHECK(fields[0] == std::to_string(i + 1));
        CHECK(fields[1] == expected_pools[i]);
        // A batch of four update indices plus one carryover index.
        CHECK(std::count(fields[2].begin(), fields[2].end(), ' ') == 3);
        CHECK(fields[3].find(' ') == std::string::npos);
    }
}

TEST_CASE("different seeds produce different runs") {
    const testutil::TempDir tmp("train");
    ExperimentConfig config = small_config();
    config.out_dir = (tmp / "runs").string();
    const Dataset dataset = build_dataset(config);
    const TrainOutcome a = train_single_run(config, 1, dataset, true);
    const TrainOutcome b = train_single_run(config, 2, dataset, true);
    CHECK(a.run_dir != b.run_dir);
    CHECK(testutil::read_file(a.run_dir / "model.ckpt") !=
          testutil::read_file(b.run_dir / "model.ckpt"));
    CHECK(testutil::read_file(a.run_dir / "train_log.csv") !=
          testutil::read_file(b.run_dir / "train_log.csv"));
}

TEST_CASE("a batch larger than the dataset is rejected") {
    const testutil::TempDir tmp("train");
    ExperimentConfig config = small_config();
    config.out_dir = (tmp / "oops").string();
    Dataset tiny = build_dataset(config);
    tiny.n = 2;
    tiny.pixels.resize(2 * tiny.sample_size());
    tiny.angles.resize(2);
    CHECK_THROWS_AS(train_single_run(config, 1, tiny, true), config_error);
}
