#include "mtlsh/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <unordered_map>

#include <json.hpp>

#include "mtlsh/baselines.hpp"
#include "mtlsh/lsh.hpp"
#include "mtlsh/moving_gaussian.hpp"
#include "mtlsh/scalar_field.hpp"
#include "mtlsh/simplify.hpp"

namespace fs = std::filesystem;

namespace mtlsh {

namespace {

// ---- small utilities -------------------------------------------------------

[[noreturn]] void fail(const std::string& stage, const std::string& message) {
    throw StageError(stage, message);
}

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t thread_count = std::min(count, static_cast<std::size_t>(workers));
    pool.reserve(thread_count);
    for (std::size_t w = 0; w < thread_count; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string zero_pad(std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, value);
    return buf;
}

std::string file_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

// Collects every artifact a command writes; unless commit() is reached, the
// destructor deletes them so failed runs leave no partial outputs behind.
class ArtifactSession {
public:
    ~ArtifactSession() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& path : written_) fs::remove(path, ec);
    }

    /// Atomic text write: temp file in the target directory, then rename.
    void write_text(const std::string& path, const std::string& content) {
        write_via(path, [&](const std::string& tmp) {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
            out << content;
            if (!out) throw std::runtime_error("write failed: " + tmp);
        });
    }

    /// Atomic write through a path-taking writer (save_field & friends).
    template <typename Writer>
    void write_via(const std::string& path, Writer&& writer) {
        const std::string tmp = path + ".tmp";
        try {
            writer(tmp);
            fs::rename(tmp, path);
        } catch (...) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw;
        }
        written_.push_back(path);
    }

    const std::vector<std::string>& artifacts() const { return written_; }
    void commit() { committed_ = true; }

private:
    std::vector<std::string> written_;
    bool committed_ = false;
};

struct StageClock {
    std::vector<std::pair<std::string, double>> timings;

    template <typename Fn>
    auto run(const std::string& name, Fn&& fn) -> decltype(fn()) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            timings.emplace_back(name, elapsed_ms(start));
        } else {
            auto result = fn();
            timings.emplace_back(name, elapsed_ms(start));
            return result;
        }
    }

private:
    static double elapsed_ms(std::chrono::steady_clock::time_point start) {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

// ---- config parsing --------------------------------------------------------

SweepDirection parse_direction(const PipelineConfig& config) {
    if (config.direction == "sublevel") return SweepDirection::sublevel;
    if (config.direction == "superlevel") return SweepDirection::superlevel;
    fail("validate", "unknown direction: " + config.direction);
}

LabelStrategy parse_labeling(const PipelineConfig& config) {
    if (config.labeling == "mesh-index") return LabelStrategy::mesh_index;
    if (config.labeling == "euclidean") return LabelStrategy::euclidean;
    fail("validate", "unknown labeling strategy: " + config.labeling);
}

struct GeneratorSpec {
    std::string name;
    int steps;
};

GeneratorSpec parse_generate(const PipelineConfig& config) {
    GeneratorSpec spec{config.generate, config.steps};
    const auto colon = config.generate.find(':');
    if (colon != std::string::npos) {
        spec.name = config.generate.substr(0, colon);
        std::stringstream rest(config.generate.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                fail("validate", "generator option '" + item + "' is not key=value");
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            if (key == "steps")
                spec.steps = std::stoi(value);
            else
                fail("validate", "unknown generator option: " + key);
        }
    }
    if (spec.name != "moving-gaussian")
        fail("validate", "unknown generator: " + spec.name);
    return spec;
}

nlohmann::json config_echo(const PipelineConfig& config) {
    nlohmann::json j;
    j["command"] = config.command;
    j["inputs"] = config.inputs;
    j["generate"] = config.generate;
    j["grid"] = {config.grid[0], config.grid[1]};
    j["steps"] = config.steps;
    j["convert_to"] = config.convert_to;
    j["direction"] = config.direction;
    j["epsilon"] = config.epsilon;
    j["labeling"] = config.labeling;
    j["label_saddles"] = config.label_saddles;
    j["reference"] = config.reference;
    j["flavor"] = config.flavor;
    j["t"] = config.t;
    j["k"] = config.k;
    j["q"] = config.q;
    j["r"] = config.r;
    j["seed"] = config.seed;
    j["relabel"] = config.relabel;
    j["pairs_file"] = config.pairs_file;
    j["classes_file"] = config.classes_file;
    j["workers"] = config.workers;
    j["out_dir"] = config.out_dir;
    return j;
}

void write_manifest(ArtifactSession& session, const PipelineConfig& config,
                    const StageClock& clock) {
    nlohmann::json manifest;
    manifest["version"] = kPipelineVersion;
    manifest["config"] = config_echo(config);
    manifest["seed"] = config.seed;
    auto& stages = manifest["stages"] = nlohmann::json::array();
    for (const auto& [name, ms] : clock.timings)
        stages.push_back({{"name", name}, {"wall_ms", ms}});
    auto& artifacts = manifest["artifacts"] = nlohmann::json::array();
    for (const auto& path : session.artifacts()) artifacts.push_back(path);
    session.write_text((fs::path(config.out_dir) / "manifest.json").string(),
                       manifest.dump(2) + "\n");
}

void ensure_out_dir(const PipelineConfig& config, const std::string& sub = "") {
    std::error_code ec;
    fs::create_directories(sub.empty() ? fs::path(config.out_dir)
                                       : fs::path(config.out_dir) / sub,
                           ec);
    if (ec) fail("validate", "cannot create output directory: " + ec.message());
}

// ---- shared pipeline pieces ------------------------------------------------

std::string pairs_to_csv(const std::set<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::string out;
    for (const auto& [i, j] : pairs)
        out += std::to_string(i) + "," + std::to_string(j) + "\n";
    return out;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> pairs_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pairs file: " + path);
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected 'i,j'");
        pairs.emplace(static_cast<std::uint32_t>(std::stoul(line.substr(0, comma))),
                      static_cast<std::uint32_t>(std::stoul(line.substr(comma + 1))));
    }
    return pairs;
}

void write_matrix_pair(ArtifactSession& session, const PairMatrix& matrix,
                       const fs::path& base) {
    session.write_via(base.string() + ".csv",
                      [&](const std::string& tmp) { write_matrix_csv(matrix, tmp); });
    session.write_via(base.string() + ".pgm",
                      [&](const std::string& tmp) { write_matrix_pgm(matrix, tmp); });
}

// ---- subcommands -----------------------------------------------------------

void cmd_field(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    if (!config.generate.empty()) {
        const GeneratorSpec spec = parse_generate(config);
        const auto fields = clock.run("generate", [&] {
            return generate_moving_gaussian(spec.steps, config.grid, config.seed);
        });
        clock.run("write-fields", [&] {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const auto path =
                    fs::path(config.out_dir) / ("step_" + zero_pad(i, 3) + ".mtlf");
                session.write_via(path.string(), [&](const std::string& tmp) {
                    save_field(fields[i], tmp, FieldFormat::raw_binary);
                });
            }
        });
        return;
    }

    const auto inputs = expand_inputs(config.inputs, {".mtlf", ".csv"});
    if (inputs.empty()) fail("validate", "field: no inputs and no --generate");
    if (config.convert_to != "csv" && config.convert_to != "mtlf")
        fail("validate", "unknown field format: " + config.convert_to);
    const FieldFormat to =
        config.convert_to == "csv" ? FieldFormat::csv : FieldFormat::raw_binary;
    const char* ext = to == FieldFormat::csv ? ".csv" : ".mtlf";
    clock.run("convert", [&] {
        for (const auto& input : inputs) {
            const ScalarField field = load_field(input, field_format_for_path(input));
            const auto path = fs::path(config.out_dir) / (file_stem(input) + ext);
            session.write_via(path.string(), [&](const std::string& tmp) {
                save_field(field, tmp, to);
            });
        }
    });
}

struct ReferenceBundle {
    LabeledMergeTree tree;
    std::vector<std::array<double, 3>> positions;
};

ReferenceBundle build_reference(const std::string& field_path, const PipelineConfig& config) {
    const ScalarField field = load_field(field_path, field_format_for_path(field_path));
    MergeTree tree = compute_merge_tree(field, parse_direction(config));
    tree = simplify_by_persistence(tree, config.epsilon);
    LabelingOptions options;
    options.label_saddles = config.label_saddles;
    ReferenceBundle bundle{assign_labels(tree, LabelStrategy::mesh_index, options),
                           vertex_positions(field)};
    return bundle;
}

void cmd_tree(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    const auto inputs = expand_inputs(config.inputs, {".mtlf", ".csv"});
    if (inputs.empty()) fail("validate", "tree: no input fields");
    const LabelStrategy strategy = parse_labeling(config);

    ReferenceBundle reference;
    if (strategy == LabelStrategy::euclidean) {
        clock.run("reference", [&] {
            reference =
                build_reference(config.reference.empty() ? inputs.front() : config.reference,
                                config);
        });
    }

    std::vector<LabeledMergeTree> trees(inputs.size());
    clock.run("build-trees", [&] {
        parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
            const ScalarField field = load_field(inputs[i], field_format_for_path(inputs[i]));
            trees[i] = build_labeled_tree(field, config,
                                          strategy == LabelStrategy::euclidean
                                              ? &reference.tree
                                              : nullptr,
                                          strategy == LabelStrategy::euclidean
                                              ? &reference.positions
                                              : nullptr);
        });
    });
    clock.run("write-trees", [&] {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const auto path =
                fs::path(config.out_dir) / (file_stem(inputs[i]) + ".tree.json");
            session.write_via(path.string(), [&](const std::string& tmp) {
                save_labeled_tree(trees[i], tmp);
            });
        }
    });
}

void cmd_sign(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    const auto inputs = expand_inputs(config.inputs, {".tree.json"});
    if (inputs.empty()) fail("validate", "sign: no input trees");

    std::vector<std::pair<std::string, Signature>> signatures(inputs.size());
    clock.run("sign", [&] {
        parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
            const LabeledMergeTree lt = load_labeled_tree(inputs[i]);
            std::string id = file_stem(inputs[i]);
            // strip a trailing ".tree" left by fs::path::stem on *.tree.json
            if (id.size() > 5 && id.ends_with(".tree")) id.resize(id.size() - 5);
            signatures[i] = {std::move(id), make_signature(lt, config)};
        });
    });
    clock.run("write-signatures", [&] {
        const auto path = fs::path(config.out_dir) / "signatures.jsonl";
        session.write_via(path.string(), [&](const std::string& tmp) {
            write_signatures(tmp, signatures);
        });
    });
}

void cmd_index(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    if (config.inputs.size() != 1)
        fail("validate", "index: expected exactly one signature file");
    const auto records = read_signatures(config.inputs.front());
    if (records.empty()) fail("validate", "index: signature file is empty");
    if (config.r == 0 || records.front().second.values.size() % config.r != 0)
        fail("validate", "index: r=" + std::to_string(config.r) +
                             " does not divide the signature length " +
                             std::to_string(records.front().second.values.size()));
    std::vector<Signature> signatures;
    signatures.reserve(records.size());
    for (const auto& [id, sig] : records) signatures.push_back(sig);

    const LshIndex index =
        clock.run("build-index", [&] { return build_index(signatures, config.r); });
    const auto pairs = clock.run("pairs", [&] { return candidate_pairs(index); });
    clock.run("matrices", [&] {
        session.write_text((fs::path(config.out_dir) / "pairs.csv").string(),
                           pairs_to_csv(pairs));
        const auto n = static_cast<std::uint32_t>(signatures.size());
        write_matrix_pair(session, binary_matrix(pairs, n),
                          fs::path(config.out_dir) / "binary");
        write_matrix_pair(session, similarity_matrix(signatures),
                          fs::path(config.out_dir) / "similarity");
    });
}

void cmd_dist(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    const auto inputs = expand_inputs(config.inputs, {".tree.json"});
    if (inputs.empty()) fail("validate", "dist: no input trees");

    std::vector<LabeledMergeTree> trees(inputs.size());
    clock.run("load-trees", [&] {
        for (std::size_t i = 0; i < inputs.size(); ++i)
            trees[i] = load_labeled_tree(inputs[i]);
    });

    std::uint32_t n = 0;
    if (config.relabel == "compact") {
        n = relabel_compact(trees);
    } else if (config.relabel == "none") {
        for (const auto& lt : trees) n = std::max(n, lt.max_label());
    } else {
        fail("validate", "unknown relabel mode: " + config.relabel);
    }

    PairMatrix matrix;
    matrix.n = static_cast<std::uint32_t>(trees.size());
    matrix.kind = MatrixKind::distance;
    matrix.data.assign(static_cast<std::size_t>(matrix.n) * matrix.n, 0.0);
    clock.run("distances", [&] {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> jobs;
        for (std::uint32_t i = 0; i < matrix.n; ++i)
            for (std::uint32_t j = i + 1; j < matrix.n; ++j) jobs.emplace_back(i, j);
        parallel_for(jobs.size(), config.workers, [&](std::size_t idx) {
            const auto [i, j] = jobs[idx];
            const double d = interleaving_distance(trees[i], trees[j], n);
            matrix.at(i, j) = d;
            matrix.at(j, i) = d;
        });
    });
    clock.run("write-matrix", [&] {
        write_matrix_pair(session, matrix, fs::path(config.out_dir) / "interleaving");
    });
}

std::vector<std::uint32_t> read_classes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open classes file: " + path);
    std::vector<std::uint32_t> classes;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        classes.push_back(static_cast<std::uint32_t>(std::stoul(line)));
    }
    return classes;
}

void cmd_eval(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    if (config.pairs_file.empty() || config.classes_file.empty())
        fail("validate", "eval: needs --pairs and --classes");
    const auto result = clock.run("evaluate", [&] {
        return precision_recall(pairs_from_csv(config.pairs_file),
                                read_classes(config.classes_file));
    });
    nlohmann::json report;
    report["precision"] = result.precision;
    report["recall"] = result.recall;
    session.write_text((fs::path(config.out_dir) / "report.json").string(),
                       report.dump(2) + "\n");
}

// Collision-rate summary of a binary matrix under a class partition: mean of
// the off-diagonal entries inside classes vs across classes.
std::pair<double, double> within_cross_rates(const PairMatrix& binary,
                                             const std::vector<std::uint32_t>& classes) {
    double within_sum = 0.0, cross_sum = 0.0;
    std::size_t within_count = 0, cross_count = 0;
    for (std::uint32_t i = 0; i < binary.n; ++i) {
        for (std::uint32_t j = i + 1; j < binary.n; ++j) {
            if (classes[i] == classes[j]) {
                within_sum += binary.at(i, j);
                ++within_count;
            } else {
                cross_sum += binary.at(i, j);
                ++cross_count;
            }
        }
    }
    return {within_count ? within_sum / within_count : 0.0,
            cross_count ? cross_sum / cross_count : 0.0};
}

void cmd_demo(const PipelineConfig& config, ArtifactSession& session, StageClock& clock) {
    ensure_out_dir(config);
    ensure_out_dir(config, "fields");
    ensure_out_dir(config, "trees");

    const auto geometry = moving_gaussian_geometry(config.steps, config.seed);
    const auto fields = clock.run("generate", [&] {
        return generate_moving_gaussian(config.steps, config.grid, config.seed);
    });
    clock.run("write-fields", [&] {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto path =
                fs::path(config.out_dir) / "fields" / ("step_" + zero_pad(i, 3) + ".mtlf");
            session.write_via(path.string(), [&](const std::string& tmp) {
                save_field(fields[i], tmp, FieldFormat::raw_binary);
            });
        }
    });

    // Superlevel trees, lightly simplified, labels transferred from step 0.
    PipelineConfig tree_config = config;
    tree_config.direction = "superlevel";
    tree_config.labeling = "euclidean";
    std::vector<LabeledMergeTree> trees(fields.size());
    clock.run("build-trees", [&] {
        MergeTree ref_tree = compute_merge_tree(fields[0], SweepDirection::superlevel);
        ref_tree = simplify_by_persistence(ref_tree, config.epsilon);
        const LabeledMergeTree reference =
            assign_labels(ref_tree, LabelStrategy::mesh_index, {});
        const auto ref_positions = vertex_positions(fields[0]);
        parallel_for(fields.size(), config.workers, [&](std::size_t i) {
            trees[i] = build_labeled_tree(fields[i], tree_config, &reference, &ref_positions);
        });
    });
    clock.run("write-trees", [&] {
        for (std::size_t i = 0; i < trees.size(); ++i) {
            const auto path =
                fs::path(config.out_dir) / "trees" / ("step_" + zero_pad(i, 3) + ".tree.json");
            session.write_via(path.string(), [&](const std::string& tmp) {
                save_labeled_tree(trees[i], tmp);
            });
        }
    });

    std::vector<std::uint32_t> phases(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i)
        phases[i] = static_cast<std::uint32_t>(geometry.phase(static_cast<int>(i)));
    std::string classes_text;
    for (std::uint32_t phase : phases) classes_text += std::to_string(phase) + "\n";
    session.write_text((fs::path(config.out_dir) / "classes.csv").string(), classes_text);

    nlohmann::json report;
    report["steps"] = config.steps;
    report["phases"] = phases;

    struct FlavorRun {
        const char* name;
        PipelineConfig sign_config;
        std::uint32_t r;
    };
    PipelineConfig rmh_config = config;
    rmh_config.flavor = "rmh";
    rmh_config.q = 2;
    PipelineConfig ss_config = config;
    ss_config.flavor = "ss";
    ss_config.k = 8;
    ss_config.t = 4;
    const std::vector<FlavorRun> runs = {{"rmh", rmh_config, 4}, {"ss", ss_config, 4}};

    for (const auto& run : runs) {
        std::vector<std::pair<std::string, Signature>> records(trees.size());
        clock.run(std::string("sign-") + run.name, [&] {
            parallel_for(trees.size(), config.workers, [&](std::size_t i) {
                records[i] = {"step_" + zero_pad(i, 3),
                              make_signature(trees[i], run.sign_config)};
            });
        });
        const auto sig_path =
            fs::path(config.out_dir) / ("signatures_" + std::string(run.name) + ".jsonl");
        session.write_via(sig_path.string(), [&](const std::string& tmp) {
            write_signatures(tmp, records);
        });

        std::vector<Signature> signatures;
        signatures.reserve(records.size());
        for (const auto& [id, sig] : records) signatures.push_back(sig);
        const auto pairs = candidate_pairs(build_index(signatures, run.r));
        session.write_text(
            (fs::path(config.out_dir) / (std::string(run.name) + "_pairs.csv")).string(),
            pairs_to_csv(pairs));
        const auto binary = binary_matrix(pairs, static_cast<std::uint32_t>(trees.size()));
        write_matrix_pair(session, binary,
                          fs::path(config.out_dir) / (std::string(run.name) + "_binary"));
        write_matrix_pair(session, similarity_matrix(signatures),
                          fs::path(config.out_dir) / (std::string(run.name) + "_similarity"));

        const auto [within, cross] = within_cross_rates(binary, phases);
        const auto scored = precision_recall(pairs, phases);
        nlohmann::json flavor_report;
        flavor_report["r"] = run.r;
        flavor_report["k"] = signatures.front().values.size();
        flavor_report["precision"] = scored.precision;
        flavor_report["recall"] = scored.recall;
        flavor_report["within_phase_collision_rate"] = within;
        flavor_report["cross_phase_collision_rate"] = cross;
        report[run.name] = std::move(flavor_report);
    }

    clock.run("interleaving", [&] {
        std::vector<LabeledMergeTree> relabeled = trees;
        const std::uint32_t n = relabel_compact(relabeled);
        PairMatrix matrix;
        matrix.n = static_cast<std::uint32_t>(relabeled.size());
        matrix.kind = MatrixKind::distance;
        matrix.data.assign(static_cast<std::size_t>(matrix.n) * matrix.n, 0.0);
        for (std::uint32_t i = 0; i < matrix.n; ++i) {
            for (std::uint32_t j = i + 1; j < matrix.n; ++j) {
                const double d = interleaving_distance(relabeled[i], relabeled[j], n);
                matrix.at(i, j) = d;
                matrix.at(j, i) = d;
            }
        }
        write_matrix_pair(session, matrix, fs::path(config.out_dir) / "interleaving");
    });

    session.write_text((fs::path(config.out_dir) / "report.json").string(),
                       report.dump(2) + "\n");
}

} // namespace

// ---- public pieces ---------------------------------------------------------

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       const std::vector<std::string>& extensions) {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<std::string> dir_files;
            for (const auto& entry : fs::directory_iterator(input)) {
                if (!entry.is_regular_file()) continue;
                const std::string ext = entry.path().extension().string();
                for (const auto& wanted : extensions) {
                    if (ext == wanted || entry.path().string().ends_with(wanted)) {
                        dir_files.push_back(entry.path().string());
                        break;
                    }
                }
            }
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else if (fs::exists(input)) {
            files.push_back(input);
        } else {
            throw std::runtime_error("input does not exist: " + input);
        }
    }
    return files;
}

LabeledMergeTree build_labeled_tree(const ScalarField& field, const PipelineConfig& config,
                                    const LabeledMergeTree* reference,
                                    const std::vector<std::array<double, 3>>* ref_positions) {
    MergeTree tree = compute_merge_tree(field, parse_direction(config));
    tree = simplify_by_persistence(tree, config.epsilon);
    LabelingOptions options;
    options.label_saddles = config.label_saddles;
    const LabelStrategy strategy = parse_labeling(config);
    std::vector<std::array<double, 3>> positions;
    if (strategy == LabelStrategy::euclidean) {
        if (!reference || !ref_positions)
            throw std::runtime_error("euclidean labeling needs a reference tree");
        positions = vertex_positions(field);
        options.reference = reference;
        options.positions = &positions;
        options.reference_positions = ref_positions;
    }
    return assign_labels(tree, strategy, options);
}

Signature make_signature(const LabeledMergeTree& lt, const PipelineConfig& config) {
    if (config.flavor == "ss") {
        if (config.k == 0) throw std::runtime_error("ss signatures need k >= 1");
        return ss_signature(lt, config.t, HashFamily::universal(config.seed, config.k));
    }
    if (config.flavor == "rmh") {
        if (config.q == 0) throw std::runtime_error("rmh signatures need q >= 1");
        return rmh_signature(lt, HashFamily::universal(config.seed, config.q));
    }
    throw std::runtime_error("unknown signature flavor: " + config.flavor);
}

std::uint32_t relabel_compact(std::vector<LabeledMergeTree>& trees) {
    std::set<std::uint32_t> universe;
    for (const auto& lt : trees)
        for (const auto& group : lt.node_labels) universe.insert(group.begin(), group.end());
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    std::uint32_t next = 1;
    for (std::uint32_t label : universe) remap[label] = next++;
    for (auto& lt : trees)
        for (auto& group : lt.node_labels)
            for (auto& label : group) label = remap.at(label);
    return next - 1;
}

void run_pipeline(const PipelineConfig& config) {
    // Config-level banding invariant: r must divide the signature length the
    // flavor would produce (SS: k, RMH: q²). The index stage re-checks r
    // against the length actually found in its input file.
    if (config.command != "index" && config.command != "eval") {
        const std::uint64_t effective_k =
            config.flavor == "rmh"
                ? static_cast<std::uint64_t>(config.q) * config.q
                : static_cast<std::uint64_t>(config.k);
        if (config.r == 0 || effective_k == 0 || effective_k % config.r != 0)
            throw StageError("validate",
                             "r=" + std::to_string(config.r) +
                                 " does not divide the signature length k=" +
                                 std::to_string(effective_k));
    }

    ArtifactSession session;
    StageClock clock;
    auto dispatch = [&] {
        if (config.command == "field") return cmd_field(config, session, clock);
        if (config.command == "tree") return cmd_tree(config, session, clock);
        if (config.command == "sign") return cmd_sign(config, session, clock);
        if (config.command == "index") return cmd_index(config, session, clock);
        if (config.command == "dist") return cmd_dist(config, session, clock);
        if (config.command == "eval") return cmd_eval(config, session, clock);
        if (config.command == "demo") return cmd_demo(config, session, clock);
        fail("validate", "unknown command: " + config.command);
    };
    try {
        dispatch();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        // Tag untagged failures with the subcommand as the stage name.
        throw StageError(config.command, e.what());
    }
    write_manifest(session, config, clock);
    session.commit();
}

} // namespace mtlsh
