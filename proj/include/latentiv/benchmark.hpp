#pragma once

#include "latentiv/core.hpp"
#include "latentiv/inference.hpp"
#include "latentiv/rng.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace latentiv {

enum class GroundTruth { XCausesY, YCausesX };

std::string_view to_string(GroundTruth truth);

/// One row of a pairmeta file: id, cause column block, effect column block, weight.
struct PairMeta {
    int id = 0;
    int cause_first = 1;
    int cause_last = 1;
    int effect_first = 2;
    int effect_last = 2;
    double weight = 1.0;

    GroundTruth ground_truth() const
    {
        return cause_first == 1 ? GroundTruth::XCausesY : GroundTruth::YCausesX;
    }
    bool univariate() const { return cause_first == cause_last && effect_first == effect_last; }
};

struct BenchmarkRecord {
    int id = 0;
    std::optional<DataPair> data;
    GroundTruth ground_truth = GroundTruth::XCausesY;
    double weight = 1.0;
    bool excluded = false;
    std::string exclusion_reason;
};

struct PairOutcome {
    int id = 0;
    std::optional<Direction> verdict;  // empty when the pair failed
    double p_difference = 0.0;
    bool correct = false;
    double weight = 1.0;
    GroundTruth ground_truth = GroundTruth::XCausesY;
    Eigen::Index n = 0;
    std::string error;
    std::vector<std::string> notes;
};

struct ExcludedPair {
    int id = 0;
    std::string reason;
};

struct BenchmarkReport {
    std::vector<PairOutcome> per_pair;
    std::vector<ExcludedPair> excluded;
    double weighted_accuracy = 0.0;
    double unweighted_accuracy = 0.0;
    DecisionMode mode = DecisionMode::ForcedChoice;
    bool ensemble = true;
    Config config;
};

/// Multivariate pairs of the 100-pair corpus release.
std::vector<int> default_exclusions();

struct BenchmarkOptions {
    std::vector<int> excluded_ids = default_exclusions();
    bool ensemble = true;
};

/// Whitespace-separated two-column numeric file. Blank lines are skipped.
/// Throws MultivariatePair when rows have more than two columns and
/// ParseError (with the line number) on malformed rows.
DataPair load_pair(const std::filesystem::path& path);

/// pairmeta layout: id cause-start cause-end effect-start effect-end weight.
std::vector<PairMeta> load_metadata(const std::filesystem::path& path);

/// Integer ids separated by whitespace or commas; '#' starts a comment.
std::vector<int> load_exclusions(const std::filesystem::path& path);

/// pairNNNN.txt inside the corpus directory.
std::filesystem::path pair_file(const std::filesystem::path& corpus_dir, int id);

/// Scores one record. Errors become failed outcomes counted as incorrect.
PairOutcome evaluate_record(const BenchmarkRecord& record, const Config& cfg, bool ensemble,
                            const RngStream& rng);

/// Loads every pair listed in pairmeta.txt, applies exclusions, runs the
/// configured inference and fills the report. Pair `id` draws from
/// rng.derive(id), so the report does not depend on evaluation order.
BenchmarkReport run_benchmark(const std::filesystem::path& corpus_dir, const Config& cfg,
                              const BenchmarkOptions& options, const RngStream& rng);

/// Recomputes both accuracies from per_pair.
void score(BenchmarkReport& report);

}  // namespace latentiv
