#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsim/corpus.hpp"
#include "topicsim/model.hpp"
#include "topicsim/preprocess.hpp"

namespace topicsim {

enum class ActionKind {
    ToggleStopRemoval,
    PerturbStopList,
    ToggleStemming,
    RemoveRareTerms,
    RemoveUbiquitousTerms,
    RemoveDocuments,
    SetNumTopics,
    SplitTopic,
    MergeTopics,
};

enum class ActionStage { Preparation, Model, Assessment };

ActionStage stage_of(ActionKind kind);
std::string kind_slug(ActionKind kind);
std::string stage_name(ActionStage stage);

// The fixed parameter grids the simulation sweeps over.
extern const std::vector<double> kRareThresholds;        // df fractions
extern const std::vector<double> kUbiquitousThresholds;  // df fractions
extern const std::vector<double> kRemoveDocFractions;

struct ActionSpec {
    ActionKind kind = ActionKind::ToggleStemming;
    double threshold = 0.0;             // RemoveRare/RemoveUbiquitous
    double fraction = 0.0;              // RemoveDocuments
    std::size_t k = 0;                  // SetNumTopics
    std::size_t topic = 0;              // SplitTopic
    std::vector<std::size_t> topics;    // MergeTopics (2-10 distinct ids)
    std::size_t add_count = 0;          // PerturbStopList
    std::size_t remove_count = 0;       // PerturbStopList
    std::uint64_t seed = 0;

    ActionStage stage() const { return stage_of(kind); }
    std::string describe() const;
};

void to_json(nlohmann::json& j, const ActionSpec& a);
void from_json(const nlohmann::json& j, ActionSpec& a);

struct ActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-kind repetition counts for plan generation. Grid-valued kinds
// (thresholds, fractions, merge N) take a repetition per grid point.
struct ActionPlanCounts {
    std::size_t perturb_stop_list = 30;
    std::size_t toggle_stop_removal = 1;
    std::size_t toggle_stemming = 1;
    std::size_t remove_rare_per_threshold = 1;
    std::size_t remove_ubiquitous_per_threshold = 1;
    std::size_t remove_documents_per_fraction = 1;
    std::size_t set_num_topics = 30;
    std::size_t split_topics = 30;  // upper bound; capped at k_baseline
    std::size_t merge_per_n = 1;    // per N in 2..10
};

// Deterministic plan: same (n, k_baseline, counts, master_seed) -> same plan.
std::vector<ActionSpec> sample_action_plan(std::size_t corpus_size,
                                           std::size_t k_baseline,
                                           std::uint64_t master_seed,
                                           const ActionPlanCounts& counts = {});

std::size_t max_num_topics(std::size_t corpus_size);

struct BaselineArtifacts {
    Corpus corpus;
    PreprocessConfig pre;
    LdaConfig lda;
    DocumentTermMatrix dtm;
    TopicModel model;
    Assignment assignment;
    // 200 highest-df non-stop terms, candidates for stop list additions
    std::vector<std::string> stop_candidates;
};

struct RunArtifacts {
    DocumentTermMatrix dtm;
    TopicModel model;
    Assignment assignment;
    ActionStage stage = ActionStage::Preparation;
    bool degenerate = false;
    std::string degenerate_reason;
};

// Re-runs the pipeline from the stage the action touches. Throws ActionError
// for actions that invalidate the run (e.g. empty vocabulary); callers record
// those runs as failed rather than aborting the sweep.
RunArtifacts apply_action(const BaselineArtifacts& baseline, const ActionSpec& action);

// The preprocessing config a preparation-stage action produces (used both to
// run the action and to digest its effective configuration).
PreprocessConfig mutated_pre_config(const BaselineArtifacts& baseline,
                                    const ActionSpec& action);

// Bipartitions a topic's documents by seeded 2-means (cosine distance) over
// their theta rows; the new sub-topic is appended as index K. Returns false
// (leaving model/assignment untouched) when the topic has < 2 documents.
bool split_topic(TopicModel& model, Assignment& assignment,
                 const DocumentTermMatrix& dtm, std::size_t topic,
                 std::uint64_t seed);

// Sums the theta columns into the lowest id, combines phi rows by
// assigned-document-count-weighted average, recomputes assignment by argmax.
void merge_topics(TopicModel& model, Assignment& assignment,
                  const std::vector<std::size_t>& topics);

// Highest-document-frequency terms not on the default stop list.
std::vector<std::string> stop_addition_candidates(const Corpus& corpus,
                                                  const PreprocessConfig& config,
                                                  std::size_t limit = 200);

}  // namespace topicsim
