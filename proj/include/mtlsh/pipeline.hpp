#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlsh/labeled_tree.hpp"
#include "mtlsh/merge_tree.hpp"
#include "mtlsh/signature.hpp"

namespace mtlsh {

inline constexpr const char* kPipelineVersion = "1.0.0";

/// One configuration drives every pipeline stage; each subcommand reads the
/// fields it needs. Identical configs produce bit-identical artifacts
/// (manifests excepted — they echo wall-clock timings).
struct PipelineConfig {
    std::string command;                      // field|tree|sign|index|dist|eval|demo

    std::vector<std::string> inputs;          // files or directories, stage-dependent
    std::string generate;                     // e.g. "moving-gaussian:steps=12"
    std::array<std::uint32_t, 2> grid{64, 64};
    int steps = 12;
    std::string convert_to = "mtlf";          // field stage output format: mtlf|csv

    std::string direction = "sublevel";       // sublevel|superlevel
    double epsilon = 0.0;
    std::string labeling = "mesh-index";      // mesh-index|euclidean
    bool label_saddles = false;
    std::string reference;                    // field file anchoring euclidean labels

    std::string flavor = "ss";                // ss|rmh
    std::uint32_t t = 4;
    std::uint32_t k = 20;
    std::uint32_t q = 2;
    std::uint32_t r = 1;
    std::uint64_t seed = 0;

    std::string relabel = "none";             // dist stage: none|compact
    std::string pairs_file;                   // eval stage
    std::string classes_file;                 // eval stage

    int workers = 1;
    std::string out_dir = ".";
};

/// Error tagged with the pipeline stage that failed.
struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string stage_name, const std::string& message)
        : std::runtime_error(message), stage(std::move(stage_name)) {}
};

/// Runs the configured subcommand end to end: validates, computes, writes
/// artifacts atomically (temp + rename; partial outputs are removed on
/// failure), and finishes with a JSON run manifest echoing the config, the
/// seed, per-stage wall-clock, and the artifact list. Throws StageError.
void run_pipeline(const PipelineConfig& config);

/// Stage building blocks shared by run_pipeline and the tests.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       const std::vector<std::string>& extensions);
LabeledMergeTree build_labeled_tree(const ScalarField& field, const PipelineConfig& config,
                                    const LabeledMergeTree* reference,
                                    const std::vector<std::array<double, 3>>* ref_positions);
Signature make_signature(const LabeledMergeTree& lt, const PipelineConfig& config);

/// Deterministic compact relabeling for distance matrices: the sorted union
/// of all labels maps to 1..n. Returns n.
std::uint32_t relabel_compact(std::vector<LabeledMergeTree>& trees);

} // namespace mtlsh
