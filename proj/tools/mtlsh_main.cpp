#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtlsh/pipeline.hpp"

namespace {

/// "64x64" → {64, 64}.
std::array<std::uint32_t, 2> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size())
        throw CLI::ValidationError("--grid", "expected WIDTHxHEIGHT, e.g. 64x64");
    try {
        const unsigned long w = std::stoul(text.substr(0, x));
        const unsigned long h = std::stoul(text.substr(x + 1));
        if (w == 0 || h == 0) throw std::invalid_argument("zero");
        return {static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h)};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected WIDTHxHEIGHT, e.g. 64x64");
    }
}

struct CliState {
    mtlsh::PipelineConfig config;
    std::string grid_text = "64x64";
};

void add_common(CLI::App* cmd, CliState& state) {
    cmd->set_config("--config", "", "plain key=value config file; flags override it");
    cmd->add_option("--out-dir", state.config.out_dir, "output directory")
        ->capture_default_str();
    cmd->add_option("--seed", state.config.seed, "64-bit seed for all randomness")
        ->capture_default_str();
    cmd->add_option("--workers", state.config.workers, "worker threads for per-tree stages")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_inputs(CLI::App* cmd, CliState& state, const char* what) {
    cmd->add_option("--input", state.config.inputs, what)->take_all();
}

void add_tree_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--direction", state.config.direction, "sweep direction")
        ->check(CLI::IsMember({"sublevel", "superlevel"}))
        ->capture_default_str();
    cmd->add_option("--epsilon", state.config.epsilon,
                    "persistence threshold for simplification")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

void add_labeling_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--labeling", state.config.labeling, "leaf labeling strategy")
        ->check(CLI::IsMember({"mesh-index", "euclidean"}))
        ->capture_default_str();
    cmd->add_flag("--label-saddles", state.config.label_saddles,
                  "also label internal nodes (mesh-index strategy)");
    cmd->add_option("--reference", state.config.reference,
                    "reference field file anchoring euclidean labels "
                    "(default: first input)");
}

void add_signature_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--flavor", state.config.flavor, "signature flavor")
        ->check(CLI::IsMember({"ss", "rmh"}))
        ->capture_default_str();
    cmd->add_option("--t", state.config.t, "subpath length (ss)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--k", state.config.k, "signature length (ss)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--q", state.config.q, "hash count per node (rmh; length = q*q)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"locality-sensitive hash signatures for labeled merge trees"};
    app.set_version_flag("--version", mtlsh::kPipelineVersion);
    app.require_subcommand(1);
    CliState state;

    auto* field = app.add_subcommand(
        "field", "load/convert scalar fields or generate synthetic sequences");
    add_common(field, state);
    add_inputs(field, state, "field files or directories (.mtlf/.csv)");
    field->add_option("--generate", state.config.generate,
                      "synthetic generator spec, e.g. moving-gaussian:steps=12");
    field->add_option("--grid", state.grid_text, "generator grid, WIDTHxHEIGHT")
        ->capture_default_str();
    field->add_option("--steps", state.config.steps, "generator sequence length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    field->add_option("--convert-to", state.config.convert_to, "output field format")
        ->check(CLI::IsMember({"mtlf", "csv"}))
        ->capture_default_str();

    auto* tree = app.add_subcommand(
        "tree", "build, simplify, and label merge trees from fields");
    add_common(tree, state);
    add_inputs(tree, state, "field files or directories (.mtlf/.csv)");
    add_tree_options(tree, state);
    add_labeling_options(tree, state);

    auto* sign = app.add_subcommand("sign", "compute signatures for labeled trees");
    add_common(sign, state);
    add_inputs(sign, state, "labeled-tree JSON files or directories");
    add_signature_options(sign, state);

    auto* index = app.add_subcommand(
        "index", "band signatures, emit candidate pairs and collision matrices");
    add_common(index, state);
    add_inputs(index, state, "one signatures.jsonl file");
    index->add_option("--r", state.config.r, "rows per band (b = k / r)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* dist = app.add_subcommand(
        "dist", "exact interleaving-distance matrix over labeled trees");
    add_common(dist, state);
    add_inputs(dist, state, "labeled-tree JSON files or directories");
    dist->add_option("--relabel", state.config.relabel,
                     "label harmonization before comparing")
        ->check(CLI::IsMember({"none", "compact"}))
        ->capture_default_str();

    auto* eval = app.add_subcommand(
        "eval", "precision/recall of candidate pairs against class ids");
    add_common(eval, state);
    eval->add_option("--pairs", state.config.pairs_file, "candidate-pair CSV (i,j per line)")
        ->required();
    eval->add_option("--classes", state.config.classes_file,
                     "class file (one class id per line, tree order)")
        ->required();

    auto* demo = app.add_subcommand(
        "demo", "moving-gaussian end-to-end run: fields, trees, both signature "
                "flavors (rmh q=2 r=4, ss k=8 t=4 r=4), matrices, report");
    add_common(demo, state);
    demo->add_option("--grid", state.grid_text, "generator grid, WIDTHxHEIGHT")
        ->capture_default_str();
    demo->add_option("--steps", state.config.steps, "sequence length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    demo->add_option("--epsilon", state.config.epsilon,
                     "persistence threshold for simplification (default 0.02)")
        ->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    state.config.command = chosen->get_name();
    if (state.config.command == "demo" && demo->count("--epsilon") == 0)
        state.config.epsilon = 0.02;
    try {
        state.config.grid = parse_grid(state.grid_text);
        mtlsh::run_pipeline(state.config);
    } catch (const mtlsh::StageError& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.stage.c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s: %s\n", state.config.command.c_str(), e.what());
        return 1;
    }
    return 0;
}
