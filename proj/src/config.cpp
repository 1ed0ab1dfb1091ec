#include "eae/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "eae/common.hpp"

namespace eae {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

// Collects every violation so one failed parse reports the full list.
struct Problems {
    std::vector<std::string> items;

    void add(const std::string& what) { items.push_back(what); }

    void raise_if_any() const {
        if (items.empty()) return;
        std::string message = "invalid configuration:";
        for (const std::string& item : items) message += "\n  - " + item;
        throw config_error(message);
    }
};

struct RawConfig {
    // section -> key -> value, duplicates rejected during collection
    std::map<std::string, std::map<std::string, std::string>> entries;

    const std::string* find(const std::string& section,
                            const std::string& key) const {
        const auto sec = entries.find(section);
        if (sec == entries.end()) return nullptr;
        const auto kv = sec->second.find(key);
        if (kv == sec->second.end()) return nullptr;
        return &kv->second;
    }
};

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"dataset",
         {"kind", "folder", "frames", "height", "width", "omega", "gamma",
          "theta0", "dt", "rod_length", "bob_radius", "pivot_x", "pivot_y",
          "draw_rod", "noise_std", "rarity_bins"}},
        {"model", {"hidden1", "hidden2", "latent"}},
        {"loss", {"kind", "lambda", "bins", "epsilon"}},
        {"scheduler", {"kind", "k", "weighting"}},
        {"optimizer", {"learning_rate", "weight_decay"}},
        {"train", {"batch", "epochs", "seeds"}},
        {"output", {"dir"}},
    };
    return keys;
}

RawConfig collect(const std::string& text, Problems& problems) {
    RawConfig raw;
    std::istringstream stream(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::string cleaned = trim(line);
        if (cleaned.empty() || cleaned[0] == '#' || cleaned[0] == ';') continue;
        if (cleaned.front() == '[') {
            if (cleaned.back() != ']' || cleaned.size() < 3) {
                problems.add("line " + std::to_string(lineno) +
                             ": malformed section header '" + cleaned + "'");
                section.clear();
                continue;
            }
            section = trim(cleaned.substr(1, cleaned.size() - 2));
            if (!known_keys().count(section)) {
                problems.add("line " + std::to_string(lineno) +
                             ": unknown section [" + section + "]");
            }
            continue;
        }
        const std::size_t eq = cleaned.find('=');
        if (eq == std::string::npos) {
            problems.add("line " + std::to_string(lineno) +
                         ": expected key = value, got '" + cleaned + "'");
            continue;
        }
        if (section.empty()) {
            problems.add("line " + std::to_string(lineno) +
                         ": key outside any section");
            continue;
        }
        const std::string key = trim(cleaned.substr(0, eq));
        const std::string value = trim(cleaned.substr(eq + 1));
        const auto known = known_keys().find(section);
        if (known != known_keys().end() && !known->second.count(key)) {
            problems.add("line " + std::to_string(lineno) + ": unknown key '" +
                         key + "' in section [" + section + "]");
            continue;
        }
        auto [it, inserted] = raw.entries[section].emplace(key, value);
        (void)it;
        if (!inserted) {
            problems.add("line " + std::to_string(lineno) + ": duplicate key '" +
                         key + "' in section [" + section + "]");
        }
    }
    return raw;
}

class Reader {
  public:
    Reader(const RawConfig& raw, Problems& problems)
        : raw_(raw), problems_(problems) {}

    void read(const std::string& section, const std::string& key,
              std::string& out) {
        if (const std::string* v = raw_.find(section, key)) out = *v;
    }

    void read(const std::string& section, const std::string& key, double& out) {
        const std::string* v = raw_.find(section, key);
        if (!v) return;
        errno = 0;
        char* end = nullptr;
        const double parsed = std::strtod(v->c_str(), &end);
        if (errno != 0 || end != v->c_str() + v->size() || v->empty()) {
            problems_.add(section + "." + key + ": '" + *v +
                          "' is not a number");
            return;
        }
        out = parsed;
    }

    void read(const std::string& section, const std::string& key,
              std::size_t& out) {
        const std::string* v = raw_.find(section, key);
        if (!v) return;
        std::uint64_t parsed = 0;
        if (!parse_u64(*v, parsed)) {
            problems_.add(section + "." + key + ": '" + *v +
                          "' is not a non-negative integer");
            return;
        }
        out = static_cast<std::size_t>(parsed);
    }

    void read(const std::string& section, const std::string& key, bool& out) {
        const std::string* v = raw_.find(section, key);
        if (!v) return;
        if (*v == "true") out = true;
        else if (*v == "false") out = false;
        else {
            problems_.add(section + "." + key + ": '" + *v +
                          "' is not true/false");
        }
    }

    void read_seeds(const std::string& section, const std::string& key,
                    std::vector<std::uint64_t>& out) {
        const std::string* v = raw_.find(section, key);
        if (!v) return;
        std::vector<std::uint64_t> seeds;
        std::istringstream stream(*v);
        std::string token;
        bool ok = true;
        while (stream >> token) {
            std::uint64_t parsed = 0;
            if (!parse_u64(token, parsed)) {
                ok = false;
                break;
            }
            seeds.push_back(parsed);
        }
        if (!ok || seeds.empty()) {
            problems_.add(section + "." + key + ": '" + *v +
                          "' is not a space-separated list of seeds");
            return;
        }
        out = std::move(seeds);
    }

  private:
    static bool parse_u64(const std::string& s, std::uint64_t& out) {
        if (s.empty()) return false;
        std::uint64_t value = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
            const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
            if (value > (UINT64_MAX - digit) / 10) return false;
            value = value * 10 + digit;
        }
        out = value;
        return true;
    }

    const RawConfig& raw_;
    Problems& problems_;
};

void validate(const ExperimentConfig& c, Problems& problems) {
    const DatasetConfig& d = c.dataset;
    if (d.kind != "simulated" && d.kind != "folder") {
        problems.add("dataset.kind: '" + d.kind +
                     "' is not simulated or folder");
    }
    if (d.kind == "folder" && d.folder.empty()) {
        problems.add("dataset.folder: required when dataset.kind = folder");
    }
    if (d.kind == "simulated" && !d.folder.empty()) {
        problems.add("dataset.folder: only valid when dataset.kind = folder");
    }
    if (d.pendulum.frames == 0) problems.add("dataset.frames: must be positive");
    if (d.pendulum.height == 0) problems.add("dataset.height: must be positive");
    if (d.pendulum.width == 0) problems.add("dataset.width: must be positive");
    if (d.pendulum.gamma < 0) problems.add("dataset.gamma: must be non-negative");
    if (d.pendulum.dt <= 0) problems.add("dataset.dt: must be positive");
    if (d.pendulum.rod_length <= 0) {
        problems.add("dataset.rod_length: must be positive");
    }
    if (d.pendulum.bob_radius <= 0) {
        problems.add("dataset.bob_radius: must be positive");
    }
    if (d.pendulum.noise_std < 0) {
        problems.add("dataset.noise_std: must be non-negative");
    }
    if (d.rarity_bins < 2) problems.add("dataset.rarity_bins: need at least 2");

    if (c.model.latent == 0) problems.add("model.latent: must be positive");
    if (!(c.model.hidden1 > c.model.hidden2 &&
          c.model.hidden2 > c.model.latent)) {
        problems.add("model: widths must satisfy hidden1 > hidden2 > latent");
    }

    if (c.loss.lambda < 0) problems.add("loss.lambda: must be non-negative");
    if (c.loss.bins < 2) problems.add("loss.bins: need at least 2");
    if (!(c.loss.epsilon > 0)) problems.add("loss.epsilon: must be positive");

    if (c.scheduler.kind != "plain" && c.scheduler.kind != "spp") {
        problems.add("scheduler.kind: '" + c.scheduler.kind +
                     "' is not plain or spp");
    }
    if (c.scheduler.kind == "spp") {
        if (c.scheduler.k == 0) {
            problems.add("scheduler.k: must be positive");
        } else if (c.train.batch / c.scheduler.k == 0) {
            problems.add("scheduler.k: " + std::to_string(c.scheduler.k) +
                         " exceeds train.batch " +
                         std::to_string(c.train.batch) +
                         " (replay memory would be empty)");
        }
    }

    if (!(c.optimizer.learning_rate > 0)) {
        problems.add("optimizer.learning_rate: must be positive");
    }
    if (c.optimizer.weight_decay < 0) {
        problems.add("optimizer.weight_decay: must be non-negative");
    }

    if (c.train.batch == 0) problems.add("train.batch: must be positive");
    if (c.train.epochs == 0) problems.add("train.epochs: must be positive");
    if (c.train.seeds.empty()) problems.add("train.seeds: need at least one");
    if (d.kind == "simulated" && c.train.batch > d.pendulum.frames) {
        problems.add("train.batch: exceeds dataset.frames");
    }

    if (c.out_dir.empty()) problems.add("output.dir: must not be empty");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    Problems problems;
    const RawConfig raw = collect(text, problems);
    Reader reader(raw, problems);

    ExperimentConfig config;
    reader.read("dataset", "kind", config.dataset.kind);
    reader.read("dataset", "folder", config.dataset.folder);
    reader.read("dataset", "frames", config.dataset.pendulum.frames);
    reader.read("dataset", "height", config.dataset.pendulum.height);
    reader.read("dataset", "width", config.dataset.pendulum.width);
    reader.read("dataset", "omega", config.dataset.pendulum.omega);
    reader.read("dataset", "gamma", config.dataset.pendulum.gamma);
    reader.read("dataset", "theta0", config.dataset.pendulum.theta0);
    reader.read("dataset", "dt", config.dataset.pendulum.dt);
    reader.read("dataset", "rod_length", config.dataset.pendulum.rod_length);
    reader.read("dataset", "bob_radius", config.dataset.pendulum.bob_radius);
    reader.read("dataset", "pivot_x", config.dataset.pendulum.pivot_x);
    reader.read("dataset", "pivot_y", config.dataset.pendulum.pivot_y);
    reader.read("dataset", "draw_rod", config.dataset.pendulum.draw_rod);
    reader.read("dataset", "noise_std", config.dataset.pendulum.noise_std);
    reader.read("dataset", "rarity_bins", config.dataset.rarity_bins);

    reader.read("model", "hidden1", config.model.hidden1);
    reader.read("model", "hidden2", config.model.hidden2);
    reader.read("model", "latent", config.model.latent);

    std::string loss_kind = loss_kind_name(config.loss.kind);
    reader.read("loss", "kind", loss_kind);
    try {
        config.loss.kind = parse_loss_kind(loss_kind);
    } catch (const config_error& e) {
        problems.add(std::string("loss.kind: ") + e.what());
    }
    reader.read("loss", "lambda", config.loss.lambda);
    reader.read("loss", "bins", config.loss.bins);
    reader.read("loss", "epsilon", config.loss.epsilon);

    reader.read("scheduler", "kind", config.scheduler.kind);
    reader.read("scheduler", "k", config.scheduler.k);
    reader.read("scheduler", "weighting", config.scheduler.weighting);

    reader.read("optimizer", "learning_rate", config.optimizer.learning_rate);
    reader.read("optimizer", "weight_decay", config.optimizer.weight_decay);

    reader.read("train", "batch", config.train.batch);
    reader.read("train", "epochs", config.train.epochs);
    reader.read_seeds("train", "seeds", config.train.seeds);

    reader.read("output", "dir", config.out_dir);

    validate(config, problems);
    problems.raise_if_any();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[dataset]\n";
    out << "kind = " << c.dataset.kind << "\n";
    if (!c.dataset.folder.empty()) out << "folder = " << c.dataset.folder << "\n";
    out << "frames = " << c.dataset.pendulum.frames << "\n";
    out << "height = " << c.dataset.pendulum.height << "\n";
    out << "width = " << c.dataset.pendulum.width << "\n";
    out << "omega = " << fmt_double(c.dataset.pendulum.omega) << "\n";
    out << "gamma = " << fmt_double(c.dataset.pendulum.gamma) << "\n";
    out << "theta0 = " << fmt_double(c.dataset.pendulum.theta0) << "\n";
    out << "dt = " << fmt_double(c.dataset.pendulum.dt) << "\n";
    out << "rod_length = " << fmt_double(c.dataset.pendulum.rod_length) << "\n";
    out << "bob_radius = " << fmt_double(c.dataset.pendulum.bob_radius) << "\n";
    out << "pivot_x = " << fmt_double(c.dataset.pendulum.pivot_x) << "\n";
    out << "pivot_y = " << fmt_double(c.dataset.pendulum.pivot_y) << "\n";
    out << "draw_rod = " << (c.dataset.pendulum.draw_rod ? "true" : "false")
        << "\n";
    out << "noise_std = " << fmt_double(c.dataset.pendulum.noise_std) << "\n";
    out << "rarity_bins = " << c.dataset.rarity_bins << "\n";
    out << "\n[model]\n";
    out << "hidden1 = " << c.model.hidden1 << "\n";
    out << "hidden2 = " << c.model.hidden2 << "\n";
    out << "latent = " << c.model.latent << "\n";
    out << "\n[loss]\n";
    out << "kind = " << loss_kind_name(c.loss.kind) << "\n";
    out << "lambda = " << fmt_double(c.loss.lambda) << "\n";
    out << "bins = " << c.loss.bins << "\n";
    out << "epsilon = " << fmt_double(c.loss.epsilon) << "\n";
    out << "\n[scheduler]\n";
    out << "kind = " << c.scheduler.kind << "\n";
    out << "k = " << c.scheduler.k << "\n";
    out << "weighting = " << (c.scheduler.weighting ? "true" : "false") << "\n";
    out << "\n[optimizer]\n";
    out << "learning_rate = " << fmt_double(c.optimizer.learning_rate) << "\n";
    out << "weight_decay = " << fmt_double(c.optimizer.weight_decay) << "\n";
    out << "\n[train]\n";
    out << "batch = " << c.train.batch << "\n";
    out << "epochs = " << c.train.epochs << "\n";
    out << "seeds =";
    for (std::uint64_t seed : c.train.seeds) out << " " << seed;
    out << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.out_dir << "\n";
    return out.str();
}

ExperimentConfig with_single_seed(const ExperimentConfig& config,
                                  std::uint64_t seed) {
    ExperimentConfig copy = config;
    copy.train.seeds = {seed};
    return copy;
}

}  // namespace eae
