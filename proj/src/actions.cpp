#include "topicsim/actions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "topicsim/rng.hpp"

namespace topicsim {

const std::vector<double> kRareThresholds = {0.0001, 0.01, 0.025, 0.05, 0.10};
const std::vector<double> kUbiquitousThresholds = {0.99, 0.95, 0.90, 0.75, 0.60, 0.50};
const std::vector<double> kRemoveDocFractions = {0.05, 0.20, 0.25, 0.40, 0.50};

ActionStage stage_of(ActionKind kind) {
    switch (kind) {
        case ActionKind::ToggleStopRemoval:
        case ActionKind::PerturbStopList:
        case ActionKind::ToggleStemming:
        case ActionKind::RemoveRareTerms:
        case ActionKind::RemoveUbiquitousTerms:
        case ActionKind::RemoveDocuments:
            return ActionStage::Preparation;
        case ActionKind::SetNumTopics:
            return ActionStage::Model;
        case ActionKind::SplitTopic:
        case ActionKind::MergeTopics:
            return ActionStage::Assessment;
    }
    throw ActionError("unknown action kind");
}

std::string kind_slug(ActionKind kind) {
    switch (kind) {
        case ActionKind::ToggleStopRemoval: return "toggle-stop-removal";
        case ActionKind::PerturbStopList: return "perturb-stop-list";
        case ActionKind::ToggleStemming: return "toggle-stemming";
        case ActionKind::RemoveRareTerms: return "remove-rare-terms";
        case ActionKind::RemoveUbiquitousTerms: return "remove-ubiquitous-terms";
        case ActionKind::RemoveDocuments: return "remove-documents";
        case ActionKind::SetNumTopics: return "set-num-topics";
        case ActionKind::SplitTopic: return "split-topic";
        case ActionKind::MergeTopics: return "merge-topics";
    }
    throw ActionError("unknown action kind");
}

std::string stage_name(ActionStage stage) {
    switch (stage) {
        case ActionStage::Preparation: return "preparation";
        case ActionStage::Model: return "model";
        case ActionStage::Assessment: return "assessment";
    }
    throw ActionError("unknown stage");
}

namespace {

ActionKind kind_from_slug(const std::string& slug) {
    for (int i = 0; i <= static_cast<int>(ActionKind::MergeTopics); ++i) {
        auto k = static_cast<ActionKind>(i);
        if (kind_slug(k) == slug) return k;
    }
    throw ActionError("unknown action kind: " + slug);
}

}  // namespace

std::string ActionSpec::describe() const {
    std::string s = kind_slug(kind);
    switch (kind) {
        case ActionKind::RemoveRareTerms:
        case ActionKind::RemoveUbiquitousTerms:
            return s + "(" + std::to_string(threshold) + ")";
        case ActionKind::RemoveDocuments:
            return s + "(" + std::to_string(fraction) + ")";
        case ActionKind::SetNumTopics:
            return s + "(" + std::to_string(k) + ")";
        case ActionKind::SplitTopic:
            return s + "(" + std::to_string(topic) + ")";
        case ActionKind::MergeTopics: {
            s += "(";
            for (std::size_t i = 0; i < topics.size(); ++i)
                s += (i ? "," : "") + std::to_string(topics[i]);
            return s + ")";
        }
        case ActionKind::PerturbStopList:
            return s + "(+" + std::to_string(add_count) + ",-" +
                   std::to_string(remove_count) + ")";
        default:
            return s;
    }
}

void to_json(nlohmann::json& j, const ActionSpec& a) {
    j = nlohmann::json{{"kind", kind_slug(a.kind)}, {"seed", a.seed}};
    switch (a.kind) {
        case ActionKind::RemoveRareTerms:
        case ActionKind::RemoveUbiquitousTerms:
            j["threshold"] = a.threshold;
            break;
        case ActionKind::RemoveDocuments:
            j["fraction"] = a.fraction;
            break;
        case ActionKind::SetNumTopics:
            j["k"] = a.k;
            break;
        case ActionKind::SplitTopic:
            j["topic"] = a.topic;
            break;
        case ActionKind::MergeTopics:
            j["topics"] = a.topics;
            break;
        case ActionKind::PerturbStopList:
            j["add_count"] = a.add_count;
            j["remove_count"] = a.remove_count;
            break;
        default:
            break;
    }
}

void from_json(const nlohmann::json& j, ActionSpec& a) {
    a = ActionSpec{};
    a.kind = kind_from_slug(j.at("kind").get<std::string>());
    a.seed = j.value("seed", std::uint64_t{0});
    a.threshold = j.value("threshold", 0.0);
    a.fraction = j.value("fraction", 0.0);
    a.k = j.value("k", std::size_t{0});
    a.topic = j.value("topic", std::size_t{0});
    a.topics = j.value("topics", std::vector<std::size_t>{});
    a.add_count = j.value("add_count", std::size_t{0});
    a.remove_count = j.value("remove_count", std::size_t{0});
}

std::size_t max_num_topics(std::size_t corpus_size) {
    auto quarter = static_cast<std::size_t>(
        std::ceil(0.25 * static_cast<double>(corpus_size)));
    return std::min<std::size_t>(quarter, 100);
}

std::vector<ActionSpec> sample_action_plan(std::size_t corpus_size,
                                           std::size_t k_baseline,
                                           std::uint64_t master_seed,
                                           const ActionPlanCounts& counts) {
    if (corpus_size < 8) throw ActionError("corpus too small for an action plan");
    Rng rng(Rng::mix(master_seed, 0x9c7a));
    std::vector<ActionSpec> plan;
    auto seed_for = [&](std::size_t ordinal) {
        return Rng::mix(master_seed, ordinal + 1);
    };
    auto push = [&](ActionSpec a) {
        a.seed = seed_for(plan.size());
        plan.push_back(std::move(a));
    };

    for (std::size_t i = 0; i < counts.perturb_stop_list; ++i) {
        ActionSpec a;
        a.kind = ActionKind::PerturbStopList;
        // either add or remove a random number of terms, per draw
        if (rng.uniform_index(2) == 0)
            a.add_count = static_cast<std::size_t>(rng.uniform_int(1, 50));
        else
            a.remove_count = static_cast<std::size_t>(rng.uniform_int(1, 50));
        push(a);
    }
    for (std::size_t i = 0; i < counts.toggle_stop_removal; ++i)
        push(ActionSpec{.kind = ActionKind::ToggleStopRemoval});
    for (std::size_t i = 0; i < counts.toggle_stemming; ++i)
        push(ActionSpec{.kind = ActionKind::ToggleStemming});
    for (double t : kRareThresholds)
        for (std::size_t i = 0; i < counts.remove_rare_per_threshold; ++i)
            push(ActionSpec{.kind = ActionKind::RemoveRareTerms, .threshold = t});
    for (double t : kUbiquitousThresholds)
        for (std::size_t i = 0; i < counts.remove_ubiquitous_per_threshold; ++i)
            push(ActionSpec{.kind = ActionKind::RemoveUbiquitousTerms, .threshold = t});
    for (double f : kRemoveDocFractions)
        for (std::size_t i = 0; i < counts.remove_documents_per_fraction; ++i)
            push(ActionSpec{.kind = ActionKind::RemoveDocuments, .fraction = f});

    const std::size_t k_max = max_num_topics(corpus_size);
    for (std::size_t i = 0; i < counts.set_num_topics; ++i) {
        ActionSpec a;
        a.kind = ActionKind::SetNumTopics;
        a.k = static_cast<std::size_t>(
            rng.uniform_int(2, static_cast<std::int64_t>(std::max<std::size_t>(k_max, 2))));
        push(a);
    }

    // up to counts.split_topics distinct topics, each split its own run
    const std::size_t n_splits = std::min(counts.split_topics, k_baseline);
    auto split_ids = rng.sample_without_replacement(k_baseline, n_splits);
    for (auto t : split_ids)
        push(ActionSpec{.kind = ActionKind::SplitTopic, .topic = t});

    for (std::size_t merge_n = 2; merge_n <= 10; ++merge_n) {
        if (merge_n > k_baseline) break;
        for (std::size_t i = 0; i < counts.merge_per_n; ++i) {
            ActionSpec a;
            a.kind = ActionKind::MergeTopics;
            a.topics = rng.sample_without_replacement(k_baseline, merge_n);
            std::sort(a.topics.begin(), a.topics.end());
            push(a);
        }
    }
    return plan;
}

std::vector<std::string> stop_addition_candidates(const Corpus& corpus,
                                                  const PreprocessConfig& config,
                                                  std::size_t limit) {
    // document frequency over raw (unstopped, unstemmed) tokens
    PreprocessConfig raw = config;
    raw.remove_stop_terms = false;
    raw.stem = false;
    std::map<std::string, std::size_t> df;
    for (const auto& doc : corpus.documents) {
        auto tokens = tokenize(doc.text, raw);
        std::set<std::string> seen(tokens.begin(), tokens.end());
        for (const auto& t : seen) ++df[t];
    }
    const auto& defaults = default_stop_list();
    std::unordered_set<std::string> stop(defaults.begin(), defaults.end());

    std::vector<std::pair<std::string, std::size_t>> ranked;
    for (const auto& [term, count] : df)
        if (!stop.count(term)) ranked.emplace_back(term, count);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > limit) ranked.resize(limit);
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (auto& [term, count] : ranked) out.push_back(std::move(term));
    return out;
}

namespace {

// cosine distance between dense rows
double dense_cos_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> normalized_term_totals(const DocumentTermMatrix& dtm,
                                           const std::vector<std::size_t>& docs,
                                           const std::vector<double>& fallback) {
    std::vector<double> totals(dtm.n_terms(), 0.0);
    double sum = 0.0;
    for (auto d : docs) {
        const auto& row = dtm.counts[d];
        for (std::size_t i = 0; i < row.cols.size(); ++i) {
            totals[row.cols[i]] += row.values[i];
            sum += row.values[i];
        }
    }
    if (sum <= 0.0) return fallback;
    for (auto& v : totals) v /= sum;
    return totals;
}

}  // namespace

bool split_topic(TopicModel& model, Assignment& assignment,
                 const DocumentTermMatrix& dtm, std::size_t topic,
                 std::uint64_t seed) {
    if (topic >= model.n_topics()) throw ActionError("split: topic out of range");
    std::vector<std::size_t> members;
    for (std::size_t d = 0; d < assignment.topic_of.size(); ++d)
        if (assignment.topic_of[d] == topic) members.push_back(d);
    if (members.size() < 2) return false;

    // seeded 2-means over theta rows, cosine distance
    Rng rng(seed);
    auto centroid_ids = rng.sample_without_replacement(members.size(), 2);
    std::vector<std::vector<double>> centroids = {
        model.theta[members[centroid_ids[0]]], model.theta[members[centroid_ids[1]]]};
    std::vector<int> side(members.size(), 0);
    for (int iter = 0; iter < 50; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& row = model.theta[members[i]];
            int best = dense_cos_dist(row, centroids[1]) < dense_cos_dist(row, centroids[0])
                           ? 1 : 0;
            if (best != side[i]) {
                side[i] = best;
                changed = true;
            }
        }
        // guard against an empty side: move the farthest doc of the full side
        for (int s = 0; s < 2; ++s) {
            if (std::count(side.begin(), side.end(), s) == 0) {
                std::size_t worst = 0;
                double worst_d = -1.0;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    double dd = dense_cos_dist(model.theta[members[i]], centroids[1 - s]);
                    if (dd > worst_d) { worst_d = dd; worst = i; }
                }
                side[worst] = s;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
        for (int s = 0; s < 2; ++s) {
            std::vector<double> c(model.n_topics(), 0.0);
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (side[i] != s) continue;
                for (std::size_t k = 0; k < c.size(); ++k)
                    c[k] += model.theta[members[i]][k];
                ++cnt;
            }
            for (auto& v : c) v /= static_cast<double>(cnt);
            centroids[s] = std::move(c);
        }
    }

    const std::size_t new_topic = model.n_topics();
    std::vector<std::size_t> sub0, sub1;
    for (std::size_t i = 0; i < members.size(); ++i)
        (side[i] == 0 ? sub0 : sub1).push_back(members[i]);

    // theta: the split topic's mass moves wholly to each member's sub-topic
    for (auto& row : model.theta) row.push_back(0.0);
    for (auto d : sub1) {
        model.theta[d][new_topic] = model.theta[d][topic];
        model.theta[d][topic] = 0.0;
    }

    // phi: each sub-topic gets the normalized term totals of its documents
    const std::vector<double> original_phi = model.phi[topic];
    model.phi[topic] = normalized_term_totals(dtm, sub0, original_phi);
    model.phi.push_back(normalized_term_totals(dtm, sub1, original_phi));

    for (auto d : sub1) assignment.topic_of[d] = new_topic;
    return true;
}

void merge_topics(TopicModel& model, Assignment& assignment,
                  const std::vector<std::size_t>& topics) {
    if (topics.size() < 2 || topics.size() > 10)
        throw ActionError("merge: need 2-10 topic ids");
    std::set<std::size_t> uniq(topics.begin(), topics.end());
    if (uniq.size() != topics.size()) throw ActionError("merge: duplicate topic ids");
    const std::size_t k = model.n_topics();
    for (auto t : topics)
        if (t >= k) throw ActionError("merge: topic out of range");

    const std::size_t target = *uniq.begin();
    std::vector<bool> absorbed(k, false);
    for (auto t : uniq)
        if (t != target) absorbed[t] = true;

    // surviving columns, in order
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < k; ++t)
        if (!absorbed[t]) keep.push_back(t);

    // theta: absorbed columns sum into the target
    for (auto& row : model.theta) {
        for (auto t : uniq)
            if (t != target) row[target] += row[t];
        std::vector<double> next;
        next.reserve(keep.size());
        for (auto t : keep) next.push_back(row[t]);
        row = std::move(next);
    }

    // phi: assigned-document-count-weighted average of the merged rows
    std::vector<std::size_t> assigned(k, 0);
    for (auto t : assignment.topic_of) ++assigned[t];
    std::vector<double> merged(model.phi[target].size(), 0.0);
    double weight_total = 0.0;
    for (auto t : uniq) weight_total += static_cast<double>(assigned[t]);
    for (auto t : uniq) {
        const double w = weight_total > 0.0
                             ? static_cast<double>(assigned[t]) / weight_total
                             : 1.0 / static_cast<double>(uniq.size());
        for (std::size_t i = 0; i < merged.size(); ++i)
            merged[i] += w * model.phi[t][i];
    }
    double msum = std::accumulate(merged.begin(), merged.end(), 0.0);
    if (msum > 0.0)
        for (auto& v : merged) v /= msum;
    model.phi[target] = std::move(merged);
    std::vector<std::vector<double>> next_phi;
    next_phi.reserve(keep.size());
    for (auto t : keep) next_phi.push_back(std::move(model.phi[t]));
    model.phi = std::move(next_phi);

    assignment = assign_topics(model);
}

PreprocessConfig mutated_pre_config(const BaselineArtifacts& baseline,
                                    const ActionSpec& action) {
    PreprocessConfig pre = baseline.pre;
    switch (action.kind) {
        case ActionKind::ToggleStopRemoval:
            pre.remove_stop_terms = !pre.remove_stop_terms;
            break;
        case ActionKind::ToggleStemming:
            pre.stem = !pre.stem;
            break;
        case ActionKind::RemoveRareTerms:
            pre.rare_df_threshold = action.threshold;
            break;
        case ActionKind::RemoveUbiquitousTerms:
            pre.ubiquitous_df_threshold = action.threshold;
            break;
        case ActionKind::PerturbStopList: {
            Rng rng(action.seed);
            const auto& cands = baseline.stop_candidates;
            const std::size_t n_add = std::min(action.add_count, cands.size());
            for (auto i : rng.sample_without_replacement(cands.size(), n_add))
                pre.stop_additions.push_back(cands[i]);
            const auto& defaults = default_stop_list();
            const std::size_t n_rem = std::min(action.remove_count, defaults.size());
            for (auto i : rng.sample_without_replacement(defaults.size(), n_rem))
                pre.stop_removals.push_back(defaults[i]);
            std::sort(pre.stop_additions.begin(), pre.stop_additions.end());
            std::sort(pre.stop_removals.begin(), pre.stop_removals.end());
            break;
        }
        case ActionKind::RemoveDocuments:
            break;  // changes the corpus, not the config
        default:
            throw ActionError("not a preparation action");
    }
    return pre;
}

RunArtifacts apply_action(const BaselineArtifacts& baseline, const ActionSpec& action) {
    RunArtifacts run;
    run.stage = action.stage();

    switch (run.stage) {
        case ActionStage::Preparation: {
            PreprocessConfig pre = mutated_pre_config(baseline, action);
            Corpus corpus = baseline.corpus;
            if (action.kind == ActionKind::RemoveDocuments) {
                Rng rng(action.seed);
                const std::size_t n = corpus.size();
                const auto n_remove = static_cast<std::size_t>(
                    std::llround(action.fraction * static_cast<double>(n)));
                auto removed = rng.sample_without_replacement(n, n_remove);
                std::vector<bool> drop(n, false);
                for (auto i : removed) drop[i] = true;
                std::vector<Document> kept;
                for (std::size_t i = 0; i < n; ++i)
                    if (!drop[i]) kept.push_back(corpus.documents[i]);
                if (kept.empty()) throw ActionError("document removal emptied corpus");
                corpus.documents = std::move(kept);
                corpus.rebuild_label_set();
            }
            run.dtm = preprocess_corpus(corpus, pre);
            LdaConfig lda = baseline.lda;
            if (lda.k > run.dtm.n_docs())
                throw ActionError("too few documents left for k topics");
            run.model = train_lda(run.dtm, lda);
            run.assignment = assign_topics(run.model);
            break;
        }
        case ActionStage::Model: {
            LdaConfig lda = baseline.lda;
            lda.k = action.k;
            lda.seed = action.seed;
            run.dtm = baseline.dtm;
            run.model = train_lda(run.dtm, lda);
            run.assignment = assign_topics(run.model);
            break;
        }
        case ActionStage::Assessment: {
            run.dtm = baseline.dtm;
            run.model = baseline.model;
            run.assignment = baseline.assignment;
            if (action.kind == ActionKind::SplitTopic) {
                if (!split_topic(run.model, run.assignment, run.dtm, action.topic,
                                 action.seed)) {
                    run.degenerate = true;
                    run.degenerate_reason = "topic has fewer than 2 documents";
                }
            } else {
                merge_topics(run.model, run.assignment, action.topics);
            }
            break;
        }
    }
    return run;
}

}  // namespace topicsim
