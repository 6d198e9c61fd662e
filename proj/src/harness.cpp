#include "segment/harness.hpp"

#include "segment/encoding.hpp"
#include "segment/errors.hpp"
#include "segment/metrics.hpp"
#include "segment/objective.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace segment {

namespace {

constexpr const char* kChannelNames[kChannels] = {"red", "green", "blue"};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) items.push_back(std::move(t));
    }
    return items;
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used, 0);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string format(const char* fmt, double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string fitness_cell(double v) { return format("%.6g", v); }
std::string quality_cell(double v) { return format("%.3f", v); }

std::string join_levels(const ThresholdSet& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(t[i]);
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (image_paths.empty()) throw ConfigError("no images configured");
    if (algorithms.empty()) throw ConfigError("no algorithms configured");
    if (nth_values.empty()) throw ConfigError("no nth values configured");
    for (int n : nth_values) {
        if (n < 1 || n > kLevels - 2) throw ConfigError("nth values must lie in [1, 254]");
    }
    if (runs < 1) throw ConfigError("runs must be at least 1");
    OptimizerConfig probe;
    probe.population = population;
    probe.max_iters = max_iters;
    probe.v_fraction = v_fraction;
    probe.lb = lb;
    probe.ub = ub;
    probe.validate();
    std::set<std::string> ids;
    for (const auto& p : image_paths) {
        if (!ids.insert(p.stem().string()).second) {
            throw ConfigError("two images share the id '" + p.stem().string() + "'");
        }
    }
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));

        if (key == "images") {
            cfg.image_paths.clear();
            for (const auto& item : split_list(value)) {
                std::filesystem::path p(item);
                cfg.image_paths.push_back(p.is_relative() && !base_dir.empty() ? base_dir / p : p);
            }
        } else if (key == "algorithms") {
            cfg.algorithms.clear();
            for (const auto& item : split_list(value)) cfg.algorithms.push_back(parse_algorithm(item));
        } else if (key == "nth") {
            cfg.nth_values.clear();
            for (const auto& item : split_list(value)) {
                cfg.nth_values.push_back(static_cast<int>(parse_integer(key, item)));
            }
        } else if (key == "runs") {
            cfg.runs = static_cast<int>(parse_integer(key, value));
        } else if (key == "population") {
            cfg.population = static_cast<int>(parse_integer(key, value));
        } else if (key == "max_iters") {
            cfg.max_iters = static_cast<int>(parse_integer(key, value));
        } else if (key == "base_seed") {
            try {
                cfg.base_seed = std::stoull(value, nullptr, 0);
            } catch (const std::exception&) {
                throw ConfigError("'base_seed' expects an unsigned integer, got '" + value + "'");
            }
        } else if (key == "v_fraction") {
            cfg.v_fraction = parse_real(key, value);
        } else if (key == "lb") {
            cfg.lb = parse_real(key, value);
        } else if (key == "ub") {
            cfg.ub = parse_real(key, value);
        } else if (key == "output_dir") {
            std::filesystem::path p(value);
            cfg.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        } else if (key == "write_segmented") {
            cfg.write_segmented = parse_bool(key, value);
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config(buf.str(), path.parent_path());
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) cfg.output_dir = dir;
    return cfg;
}

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& image_id, Algorithm algorithm,
                          int nth, int run, int channel) {
    const std::string key = image_id + '|' + std::string(to_string(algorithm)) + '|' + std::to_string(nth) +
                            '|' + std::to_string(run) + '|' + std::to_string(channel);
    return base_seed ^ splitmix64(fnv1a(key));
}

RgbImage reconstruct(const RgbImage& img, const std::array<MceTables, kChannels>& tables,
                     const ChannelThresholds& thresholds) {
    ClassValues values;
    for (int ch = 0; ch < kChannels; ++ch) {
        values[ch] = reconstruction_values(mce_fitness(tables[ch], thresholds[ch]));
    }
    return apply_thresholds(img, thresholds, values);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    struct Source {
        std::string id;
        RgbImage image;
        std::array<MceTables, kChannels> tables;
    };
    std::vector<Source> sources;
    for (const auto& path : cfg.image_paths) {
        Source s{path.stem().string(), read_image(path), {}};
        for (int ch = 0; ch < kChannels; ++ch) s.tables[ch] = build_tables(channel_histogram(s.image, ch));
        sources.push_back(std::move(s));
    }

    struct Task {
        std::size_t source;
        Algorithm algorithm;
        int nth;
        int run;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < sources.size(); ++s) {
        for (Algorithm alg : cfg.algorithms) {
            for (int nth : cfg.nth_values) {
                for (int run = 0; run < cfg.runs; ++run) tasks.push_back({s, alg, nth, run});
            }
        }
    }

    std::vector<RunRecord> records(tasks.size());
    const auto n = static_cast<std::ptrdiff_t>(tasks.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const auto started = std::chrono::steady_clock::now();
            const Task& task = tasks[static_cast<std::size_t>(i)];
            const Source& src = sources[task.source];
            RunRecord& rec = records[static_cast<std::size_t>(i)];
            rec.image_id = src.id;
            rec.algorithm = task.algorithm;
            rec.nth = task.nth;
            rec.run = task.run;

            ChannelThresholds thresholds;
            for (int ch = 0; ch < kChannels; ++ch) {
                OptimizerConfig oc;
                oc.algorithm = task.algorithm;
                oc.population = cfg.population;
                oc.max_iters = cfg.max_iters;
                oc.dim = task.nth;
                oc.lb = cfg.lb;
                oc.ub = cfg.ub;
                oc.v_fraction = cfg.v_fraction;
                oc.seed = derive_seed(cfg.base_seed, src.id, task.algorithm, task.nth, task.run, ch);
                RunResult result = run(oc, objective_adapter(src.tables[ch]));

                ChannelRun& out = rec.channels[ch];
                out.thresholds = decode_position(result.best.position);
                out.fitness = mce_fitness(src.tables[ch], out.thresholds).value;
                out.trace = std::move(result.trace);
                out.branches = std::move(result.branches);
                thresholds[ch] = out.thresholds;
            }
            RgbImage segmented = reconstruct(src.image, src.tables, thresholds);
            rec.mse = mse(src.image, segmented);
            rec.psnr = psnr_from_mse(rec.mse);
            if (task.run == 0 && cfg.write_segmented) rec.segmented = std::move(segmented);
            rec.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        } catch (...) {
#pragma omp critical(segment_harness_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

std::map<std::string, std::string> render_reports(const std::vector<RunRecord>& records) {
    // Row and column orders follow first appearance in the (already ordered) records.
    std::vector<std::pair<std::string, int>> rows;
    std::vector<Algorithm> columns;
    for (const auto& r : records) {
        const std::pair<std::string, int> row{r.image_id, r.nth};
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
        if (std::find(columns.begin(), columns.end(), r.algorithm) == columns.end()) columns.push_back(r.algorithm);
    }

    auto cell_records = [&](const std::pair<std::string, int>& row, Algorithm alg) {
        std::vector<const RunRecord*> out;
        for (const auto& r : records) {
            if (r.image_id == row.first && r.nth == row.second && r.algorithm == alg) out.push_back(&r);
        }
        return out;
    };
    auto mean_of = [](const std::vector<const RunRecord*>& rs, auto&& value) {
        double sum = 0.0;
        for (const auto* r : rs) sum += value(*r);
        return sum / static_cast<double>(rs.size());
    };
    auto table = [&](auto&& value, auto&& cell) {
        std::string csv = "image,nth";
        for (Algorithm a : columns) csv += "," + std::string(to_string(a));
        csv += '\n';
        for (const auto& row : rows) {
            csv += row.first + "," + std::to_string(row.second);
            for (Algorithm a : columns) {
                const auto rs = cell_records(row, a);
                csv += ",";
                if (!rs.empty()) csv += cell(mean_of(rs, value));
            }
            csv += '\n';
        }
        return csv;
    };

    std::map<std::string, std::string> files;
    for (int ch = 0; ch < kChannels; ++ch) {
        files[std::string("fitness_") + kChannelNames[ch] + ".csv"] =
            table([ch](const RunRecord& r) { return r.channels[ch].fitness; }, fitness_cell);
    }
    files["psnr.csv"] = table([](const RunRecord& r) { return r.psnr; }, quality_cell);
    files["mse.csv"] = table([](const RunRecord& r) { return r.mse; }, quality_cell);

    std::string runs = "image,algorithm,nth,run,thresholds_red,thresholds_green,thresholds_blue,"
                       "fitness_red,fitness_green,fitness_blue,psnr,mse\n";
    for (const auto& r : records) {
        runs += r.image_id + "," + std::string(to_string(r.algorithm)) + "," + std::to_string(r.nth) + "," +
                std::to_string(r.run);
        for (const auto& c : r.channels) runs += "," + join_levels(c.thresholds);
        for (const auto& c : r.channels) runs += "," + fitness_cell(c.fitness);
        runs += "," + quality_cell(r.psnr) + "," + quality_cell(r.mse) + "\n";
    }
    files["runs.csv"] = std::move(runs);

    for (const auto& row : rows) {
        std::string csv = "iteration,algorithm,mean_best_fitness,channel\n";
        for (Algorithm a : columns) {
            const auto rs = cell_records(row, a);
            if (rs.empty()) continue;
            for (int ch = 0; ch < kChannels; ++ch) {
                const auto iters = rs.front()->channels[ch].trace.best_fitness_per_iteration.size();
                for (std::size_t it = 0; it < iters; ++it) {
                    const double m = mean_of(rs, [&](const RunRecord& r) {
                        return r.channels[ch].trace.best_fitness_per_iteration[it];
                    });
                    csv += std::to_string(it + 1) + "," + std::string(to_string(a)) + "," + fitness_cell(m) + "," +
                           kChannelNames[ch] + "\n";
                }
            }
        }
        files["convergence_" + row.first + "_nth" + std::to_string(row.second) + ".csv"] = std::move(csv);
    }
    return files;
}

void write_reports(const std::vector<RunRecord>& records, const std::filesystem::path& dir) {
    if (records.empty()) throw ConfigError("no records to report");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& [name, content] : render_reports(records)) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / name).string());
        out << content;
    }
    bool any_image = false;
    for (const auto& r : records) {
        if (!r.segmented) continue;
        if (!any_image) {
            std::filesystem::create_directories(dir / "segmented", ec);
            if (ec) throw IoError("cannot create " + (dir / "segmented").string());
            any_image = true;
        }
        write_png(*r.segmented, dir / "segmented" /
                                    (r.image_id + "_" + std::string(to_string(r.algorithm)) + "_nth" +
                                     std::to_string(r.nth) + ".png"));
    }
}

ChannelThresholds parse_channel_thresholds(const std::string& spec) {
    std::array<std::vector<int>, kChannels> levels;
    std::array<bool, kChannels> seen{};
    int current = -1;
    std::string token;
    std::string normalized = spec;
    std::replace(normalized.begin(), normalized.end(), ';', ',');
    std::istringstream in(normalized);
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        if (token.size() >= 2 && token[1] == ':') {
            switch (std::tolower(static_cast<unsigned char>(token[0]))) {
                case 'r': current = 0; break;
                case 'g': current = 1; break;
                case 'b': current = 2; break;
                default: throw ConfigError("unknown channel prefix in '" + token + "'");
            }
            if (seen[current]) throw ConfigError("channel listed twice in thresholds");
            seen[current] = true;
            token = trim(token.substr(2));
            if (token.empty()) continue;
        }
        if (current < 0) throw ConfigError("thresholds must start with r:, g: or b:");
        levels[current].push_back(static_cast<int>(parse_integer("thresholds", token)));
    }
    ChannelThresholds out;
    for (int ch = 0; ch < kChannels; ++ch) {
        if (!seen[ch] || levels[ch].empty()) {
            throw ConfigError(std::string("missing thresholds for channel ") + kChannelNames[ch]);
        }
        out[ch] = ThresholdSet(std::move(levels[ch]));
    }
    return out;
}

}  // namespace segment
