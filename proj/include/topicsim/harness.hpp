#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsim/actions.hpp"
#include "topicsim/corpus.hpp"
#include "topicsim/metrics.hpp"
#include "topicsim/model.hpp"

namespace topicsim {

struct HarnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GtMode { Labels, BaselineAsGt };

struct MetricsSettings {
    std::size_t pair_samples = 10000;       // 0 = exact enumeration
    std::size_t silhouette_max_sample = 2000;
};

struct SimulationPlan {
    std::string corpus_path;
    std::string output_dir = "sweep-out";
    std::uint64_t master_seed = 42;
    GtMode gt_mode = GtMode::Labels;
    PreprocessConfig pre;
    LdaConfig lda;  // lda.k == 0 -> derived from labels (or 10)
    ActionPlanCounts counts;
    MetricsSettings metrics;
};

SimulationPlan load_plan(const std::string& path);
void save_plan(const SimulationPlan& plan, const std::string& path);
nlohmann::json plan_to_json(const SimulationPlan& plan);
SimulationPlan plan_from_json(const nlohmann::json& j);

// FNV-1a over the canonical serialization of both configs (the default stop
// list is covered: an override lands in the serialized PreprocessConfig).
std::uint64_t config_digest(const PreprocessConfig& pre, const LdaConfig& lda);

enum class RunStatus { Ok, Degenerate, Failed };

struct RunRecord {
    std::string run_id;
    std::optional<ActionSpec> action;  // empty for the baseline record
    ActionStage stage = ActionStage::Preparation;
    std::uint64_t config_digest = 0;
    RunStatus status = RunStatus::Ok;
    std::string failure_reason;
    MetricsVector metrics;
    std::optional<double> s_r;  // present iff status == Ok
    std::vector<std::string> imputed_metrics;

    // per-document outputs (probabilities > 0.001, 6 significant digits)
    std::vector<std::string> doc_ids;
    std::vector<std::size_t> assigned_topic;            // aligned with doc_ids
    std::vector<std::vector<std::pair<std::size_t, double>>> doc_topic_probs;
    std::vector<std::size_t> topic_sizes;
    std::vector<std::vector<std::pair<std::string, double>>> top_terms;  // per topic
    std::vector<std::vector<std::pair<std::string, double>>> top_docs;   // per topic
    // mean off-diagonal topic distance summaries
    double mean_kl = 0.0, mean_js = 0.0, mean_cosine = 0.0;
};

nlohmann::json record_to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::json& j);

struct SweepResult {
    SimulationPlan plan;
    RunRecord baseline;
    std::vector<RunRecord> runs;
};

// Runs the default pipeline and computes the reference metric vector.
RunRecord run_baseline(const SimulationPlan& plan);
RunRecord run_baseline(const SimulationPlan& plan, const Corpus& corpus,
                       BaselineArtifacts& artifacts_out);

// Baseline + one run per sampled action; persists everything under
// plan.output_dir (plan.json, baseline.json, runs/, metrics.csv).
SweepResult run_sweep(const SimulationPlan& plan, std::size_t jobs = 0);

// Ok records, stable-sorted by impact score descending, ties by run_id.
std::vector<RunRecord> rank_actions(const std::vector<RunRecord>& records);

std::string metrics_csv(const SweepResult& sweep);

SweepResult load_sweep(const std::string& dir);

}  // namespace topicsim
