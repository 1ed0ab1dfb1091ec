#include "eae/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "eae/checkpoint.hpp"
#include "eae/common.hpp"
#include "eae/pendulum.hpp"

namespace eae {

namespace {

// Seed streams: 1 = model init, 2 = batch shuffling. Stream 0 is reserved
// for dataset noise, which uses a fixed dataset seed so all runs share the
// exact same frames.
constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kShuffleStream = 2;
constexpr std::uint64_t kDatasetSeed = 0;

double mean_of(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

void write_indices(std::ofstream& out, const std::vector<std::size_t>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ' ';
        out << ids[i];
    }
}

}  // namespace

std::vector<double> Trainer::eval_losses(const ImageBatch& batch) const {
    return per_sample_losses(loss, batch, reconstruct(model, batch));
}

double Trainer::update_on(const ImageBatch& batch, bool focal,
                          double focal_epsilon) {
    auto [recon, cache] = forward(model, batch);
    const std::vector<double> losses = per_sample_losses(loss, batch, recon);

    std::vector<double> weights;
    const std::vector<double>* weight_ptr = nullptr;
    if (focal) {
        weights = focal_weights(losses, focal_epsilon);
        weight_ptr = &weights;
    }

    const ImageBatch grad = loss_grad(loss, batch, recon, weight_ptr);
    const ParamGrads grads = backward(model, cache, grad);
    adam_step(model, grads, adam);

    return focal ? weighted_batch_loss(losses, weights) : mean_of(losses);
}

Dataset build_dataset(const ExperimentConfig& config) {
    if (config.dataset.kind == "folder") {
        return load_image_folder(config.dataset.folder);
    }
    return simulate_pendulum(config.dataset.pendulum, kDatasetSeed);
}

TrainOutcome train_single_run(const ExperimentConfig& config,
                              std::uint64_t seed, const Dataset& dataset,
                              bool quiet) {
    if (config.train.batch > dataset.n) {
        throw config_error("train.batch exceeds the dataset size " +
                           std::to_string(dataset.n));
    }

    const std::filesystem::path run_dir =
        std::filesystem::path(config.out_dir) / ("seed" + std::to_string(seed));
    std::filesystem::create_directories(run_dir);

    {
        std::ofstream cfg(run_dir / "config.ini", std::ios::trunc);
        if (!cfg) throw io_error("cannot write " + (run_dir / "config.ini").string());
        cfg << serialize_config(with_single_seed(config, seed));
    }

    Trainer trainer;
    trainer.model = init_model(dataset.sample_size(), config.model.hidden1,
                               config.model.hidden2, config.model.latent,
                               mix_seed(seed, kModelStream));
    AdamSettings settings;
    settings.learning_rate = config.optimizer.learning_rate;
    settings.weight_decay = config.optimizer.weight_decay;
    trainer.adam = make_adam_state(trainer.model, settings);
    trainer.loss = config.loss;

    const bool use_spp = config.scheduler.kind == "spp";
    SppConfig spp;
    ReplayBuffer buffer;
    if (use_spp) {
        spp = SppConfig::make(config.train.batch, config.scheduler.k,
                              config.scheduler.weighting);
        buffer.capacity = spp.memory;
    }

    std::ofstream log(run_dir / "train_log.csv", std::ios::trunc);
    log << "epoch,mean_loss\n";
    std::ofstream timing(run_dir / "timing.csv", std::ios::trunc);
    timing << "epoch,seconds\n";
    std::ofstream spp_log;
    if (use_spp) {
        spp_log.open(run_dir / "spp_log.csv", std::ios::trunc);
        spp_log << "step,pool_size,update_indices,carryover_indices,mean_loss\n";
    }

    const double focal_epsilon = config.loss.epsilon;
    std::size_t global_step = 0;
    double epoch_loss = 0.0;
    for (std::size_t epoch = 0; epoch < config.train.epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();
        const auto batches =
            epoch_batches(dataset.n, config.train.batch,
                          mix_seed(seed, kShuffleStream), epoch);
        buffer.clear();

        double loss_sum = 0.0;
        for (const std::vector<std::size_t>& rows : batches) {
            const ImageBatch incoming = dataset.gather(rows);
            ++global_step;
            double step_loss = 0.0;
            if (use_spp) {
                SppCallbacks callbacks;
                callbacks.pool_losses = [&](const ImageBatch& pool) {
                    return trainer.eval_losses(pool);
                };
                callbacks.update = [&](const ImageBatch& update_batch) {
                    return trainer.update_on(update_batch, spp.weighting,
                                             focal_epsilon);
                };
                const StepOutcome outcome = spp_training_step(
                    spp, incoming, rows, buffer, callbacks);
                step_loss = outcome.weighted_loss;
                spp_log << global_step << ',' << outcome.pool_size << ',';
                write_indices(spp_log, outcome.update_indices);
                spp_log << ',';
                write_indices(spp_log, outcome.carryover_indices);
                spp_log << ',' << fmt_double(outcome.weighted_loss) << '\n';
            } else {
                step_loss = trainer.update_on(incoming, false, focal_epsilon);
            }
            loss_sum += step_loss;
        }

        epoch_loss = loss_sum / static_cast<double>(batches.size());
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        log << (epoch + 1) << ',' << fmt_double(epoch_loss) << '\n';
        timing << (epoch + 1) << ',' << fmt_double(seconds) << '\n';
        if (!quiet) {
            std::printf("seed %llu epoch %zu/%zu loss %.6f\n",
                        static_cast<unsigned long long>(seed), epoch + 1,
                        config.train.epochs, epoch_loss);
            std::fflush(stdout);
        }
    }

    TrainOutcome outcome;
    outcome.run_dir = run_dir;
    outcome.checkpoint = run_dir / "model.ckpt";
    outcome.final_epoch_loss = epoch_loss;
    save_checkpoint(trainer.model, outcome.checkpoint);
    return outcome;
}

}  // namespace eae
