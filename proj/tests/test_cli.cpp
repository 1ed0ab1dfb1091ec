#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/test_util.hpp"

// EAE_BINARY_PATH is injected by the build so these tests can drive the real
// executable end to end.

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = std::string(EAE_BINARY_PATH) + " " + args;
    if (stdout_file.empty()) {
        cmd += " >/dev/null 2>&1";
    } else {
        cmd += " > " + stdout_file.string() + " 2>&1";
    }
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

const char* kBaseConfig =
    "[dataset]\n"
    "frames = 12\n"
    "height = 32\n"
    "width = 32\n"
    "rod_length = 10\n"
    "bob_radius = 2\n"
    "pivot_x = 16\n"
    "pivot_y = 6\n"
    "\n[model]\n"
    "hidden1 = 48\n"
    "hidden2 = 12\n"
    "latent = 3\n"
    "\n[train]\n"
    "batch = 4\n"
    "epochs = 1\n"
    "seeds = 1\n";

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("generate writes frames plus a manifest, reproducibly") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);

    const fs::path out_a = tmp / "data_a";
    const fs::path out_b = tmp / "data_b";
    CHECK(run_cli("generate --config " + cfg.string() + " --out " +
                  out_a.string() + " --quiet") == 0);
    CHECK(run_cli("generate --config " + cfg.string() + " --out " +
                  out_b.string() + " --quiet") == 0);

    std::size_t frames = 0;
    for (const auto& entry : fs::directory_iterator(out_a)) {
        if (entry.path().extension() == ".pgm") ++frames;
    }
    CHECK(frames == 12);
    CHECK(fs::exists(out_a / "frame_00000.pgm"));
    CHECK(fs::exists(out_a / "frame_00011.pgm"));
    CHECK(count_lines(out_a / "manifest.csv") == 13);

    for (const auto& entry : fs::directory_iterator(out_a)) {
        const fs::path twin = out_b / entry.path().filename();
        CAPTURE(entry.path().filename().string());
        CHECK(testutil::read_file(entry.path()) == testutil::read_file(twin));
    }
}

TEST_CASE("train produces logs and a checkpoint deterministically") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);

    const fs::path out_a = tmp / "runs_a";
    const fs::path out_b = tmp / "runs_b";
    CHECK(run_cli("train --config " + cfg.string() + " --out " +
                  out_a.string() + " --quiet") == 0);
    CHECK(run_cli("train --config " + cfg.string() + " --out " +
                  out_b.string() + " --quiet") == 0);

    const fs::path run_a = out_a / "seed1";
    CHECK(count_lines(run_a / "train_log.csv") == 2);  // header + one epoch
    // config.ini embeds the output dir and so differs between the two runs.
    for (const char* name : {"train_log.csv", "model.ckpt"}) {
        CAPTURE(name);
        CHECK(testutil::read_file(run_a / name) ==
              testutil::read_file(out_b / "seed1" / name));
    }
    CHECK(fs::exists(run_a / "config.ini"));
}

TEST_CASE("a zero-weight composite run reproduces the plain run's log") {
    const testutil::TempDir tmp("cli");
    const fs::path plain_cfg = tmp / "plain.ini";
    const fs::path zero_cfg = tmp / "zero.ini";
    testutil::write_file(plain_cfg,
                         std::string(kBaseConfig) + "\n[loss]\nkind = l2\n");
    testutil::write_file(zero_cfg, std::string(kBaseConfig) +
                                       "\n[loss]\nkind = entropy\n"
                                       "lambda = 0\nbins = 16\n");

    const fs::path out_plain = tmp / "plain";
    const fs::path out_zero = tmp / "zero";
    CHECK(run_cli("train --config " + plain_cfg.string() + " --out " +
                  out_plain.string() + " --quiet") == 0);
    CHECK(run_cli("train --config " + zero_cfg.string() + " --out " +
                  out_zero.string() + " --quiet") == 0);

    CHECK(testutil::read_file(out_plain / "seed1" / "train_log.csv") ==
          testutil::read_file(out_zero / "seed1" / "train_log.csv"));
    CHECK(testutil::read_file(out_plain / "seed1" / "model.ckpt") ==
          testutil::read_file(out_zero / "seed1" / "model.ckpt"));
}

TEST_CASE("seed overrides replace the configured list") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);
    const fs::path out = tmp / "runs";
    CHECK(run_cli("train --config " + cfg.string() + " --out " + out.string() +
                  " --seed 5 --seed 6 --quiet") == 0);
    CHECK(fs::exists(out / "seed5" / "model.ckpt"));
    CHECK(fs::exists(out / "seed6" / "model.ckpt"));
    CHECK_FALSE(fs::exists(out / "seed1"));
}

TEST_CASE("evaluate and compare close the loop") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);
    const fs::path out = tmp / "runs";
    REQUIRE(run_cli("train --config " + cfg.string() + " --out " +
                    out.string() + " --quiet") == 0);
    const std::string ckpt = (out / "seed1" / "model.ckpt").string();

    const fs::path eval_a = tmp / "eval_a";
    const fs::path eval_b = tmp / "eval_b";
    CHECK(run_cli("evaluate --config " + cfg.string() + " --out " +
                  eval_a.string() + " --quiet " + ckpt) == 0);
    CHECK(run_cli("evaluate --config " + cfg.string() + " --out " +
                  eval_b.string() + " --quiet " + ckpt) == 0);
    CHECK(fs::exists(eval_a / "summary.csv"));
    CHECK(testutil::read_file(eval_a / "summary.csv") ==
          testutil::read_file(eval_b / "summary.csv"));

    const fs::path cmp = tmp / "cmp";
    CHECK(run_cli("compare " + eval_a.string() + " " + eval_b.string() +
                  " --out " + cmp.string() + " --quiet") == 0);
    const fs::path table = cmp / "comparison.csv";
    REQUIRE(fs::exists(table));

    std::ifstream in(table);
    std::string line;
    std::getline(in, line);
    CHECK(line == "metric,method,value,delta_vs_first");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        // Identical reports leave no residual anywhere.
        CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
    CHECK(rows == 2 * 11);  // eleven summary metrics, two methods
}

TEST_CASE("quiet mode silences progress output") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);
    const fs::path captured = tmp / "stdout.txt";
    CHECK(run_cli("train --config " + cfg.string() + " --out " +
                      (tmp / "runs").string() + " --quiet",
                  captured) == 0);
    CHECK(testutil::read_file(captured).empty());

    const fs::path loud = tmp / "stdout_loud.txt";
    CHECK(run_cli("generate --config " + cfg.string() + " --out " +
                      (tmp / "data").string(),
                  loud) == 0);
    CHECK_FALSE(testutil::read_file(loud).empty());
}

TEST_CASE("failures map to distinct exit codes") {
    const testutil::TempDir tmp("cli");
    const fs::path cfg = tmp / "run.ini";
    testutil::write_file(cfg, kBaseConfig);

    // Usage errors and configuration errors exit with 1.
    CHECK(run_cli("") == 1);
    CHECK(run_cli("train --config " + (tmp / "absent.ini").string()) == 1);
    CHECK(run_cli("train --config " + cfg.string() + " --bogus-flag") == 1);
    CHECK(run_cli("compare " + tmp.dir.string()) == 1);

    const fs::path bad_cfg = tmp / "bad.ini";
    testutil::write_file(bad_cfg,
                         std::string(kBaseConfig) + "\n[loss]\nbins = 1\n");
    CHECK(run_cli("train --config " + bad_cfg.string()) == 1);

    const fs::path folder_cfg = tmp / "folder.ini";
    testutil::write_file(folder_cfg,
                         "[dataset]\nkind = folder\nfolder = " +
                             (tmp / "nowhere").string() + "\n[train]\nbatch = 2\n");
    CHECK(run_cli("generate --config " + folder_cfg.string()) == 1);

    // Runtime failures (missing files, broken data) exit with 2.
    CHECK(run_cli("evaluate --config " + cfg.string() + " " +
                  (tmp / "missing.ckpt").string()) == 2);
    CHECK(run_cli("train --config " + folder_cfg.string()) == 2);
}
