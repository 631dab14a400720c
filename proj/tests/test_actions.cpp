#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_support.hpp"
#include "topicsim/actions.hpp"
#include "topicsim/metrics.hpp"

using namespace topicsim;

namespace {

BaselineArtifacts make_baseline(std::size_t docs_per_group = 30, std::size_t k = 4) {
    BaselineArtifacts art;
    art.corpus = ts_test::two_group_corpus(docs_per_group, 25);
    art.pre = PreprocessConfig{};
    art.lda.k = k;
    art.lda.iterations = 40;
    art.lda.seed = 3;
    art.dtm = preprocess_corpus(art.corpus, art.pre);
    art.model = train_lda(art.dtm, art.lda);
    art.assignment = assign_topics(art.model);
    art.stop_candidates = stop_addition_candidates(art.corpus, art.pre);
    return art;
}

std::map<ActionKind, std::size_t> kind_histogram(const std::vector<ActionSpec>& plan) {
    std::map<ActionKind, std::size_t> h;
    for (const auto& a : plan) ++h[a.kind];
    return h;
}

}  // namespace

TEST_CASE("stage routing") {
    CHECK(stage_of(ActionKind::ToggleStopRemoval) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::PerturbStopList) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::ToggleStemming) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::RemoveRareTerms) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::RemoveUbiquitousTerms) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::RemoveDocuments) == ActionStage::Preparation);
    CHECK(stage_of(ActionKind::SetNumTopics) == ActionStage::Model);
    CHECK(stage_of(ActionKind::SplitTopic) == ActionStage::Assessment);
    CHECK(stage_of(ActionKind::MergeTopics) == ActionStage::Assessment);
}

TEST_CASE("parameter grids are pinned") {
    CHECK(kRareThresholds == std::vector<double>{0.0001, 0.01, 0.025, 0.05, 0.10});
    CHECK(kUbiquitousThresholds ==
          std::vector<double>{0.99, 0.95, 0.90, 0.75, 0.60, 0.50});
    CHECK(kRemoveDocFractions == std::vector<double>{0.05, 0.20, 0.25, 0.40, 0.50});
}

TEST_CASE("topic count bound follows corpus size") {
    CHECK(max_num_topics(8) == 2);
    CHECK(max_num_topics(40) == 10);
    CHECK(max_num_topics(400) == 100);
    CHECK(max_num_topics(2000) == 100);  // capped
}

TEST_CASE("plan sampling is deterministic and complete") {
    auto p1 = sample_action_plan(2000, 20, 42);
    auto p2 = sample_action_plan(2000, 20, 42);
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].describe() == p2[i].describe());
        CHECK(p1[i].seed == p2[i].seed);
    }

    auto p3 = sample_action_plan(2000, 20, 43);
    bool any_diff = p1.size() != p3.size();
    for (std::size_t i = 0; !any_diff && i < p1.size(); ++i)
        any_diff = p1[i].describe() != p3[i].describe();
    CHECK(any_diff);

    auto hist = kind_histogram(p1);
    CHECK(hist[ActionKind::PerturbStopList] == 30);
    CHECK(hist[ActionKind::ToggleStopRemoval] == 1);
    CHECK(hist[ActionKind::ToggleStemming] == 1);
    CHECK(hist[ActionKind::RemoveRareTerms] == 5);
    CHECK(hist[ActionKind::RemoveUbiquitousTerms] == 6);
    CHECK(hist[ActionKind::RemoveDocuments] == 5);
    CHECK(hist[ActionKind::SetNumTopics] == 30);
    CHECK(hist[ActionKind::SplitTopic] == 20);  // capped at k
    CHECK(hist[ActionKind::MergeTopics] == 9);  // one per merge size 2..10

    std::set<std::size_t> split_targets;
    for (const auto& a : p1) {
        if (a.kind == ActionKind::SetNumTopics) {
            CHECK(a.k >= 2);
            CHECK(a.k <= 100);
        }
        if (a.kind == ActionKind::SplitTopic) {
            CHECK(a.topic < 20);
            split_targets.insert(a.topic);
        }
        if (a.kind == ActionKind::MergeTopics) {
            CHECK(a.topics.size() >= 2);
            CHECK(a.topics.size() <= 10);
            std::set<std::size_t> distinct(a.topics.begin(), a.topics.end());
            CHECK(distinct.size() == a.topics.size());
        }
    }
    CHECK(split_targets.size() == 20);  // each topic split once

    CHECK_THROWS_AS(sample_action_plan(4, 2, 1), ActionError);
}

TEST_CASE("action json round trip") {
    ActionSpec a;
    a.kind = ActionKind::MergeTopics;
    a.topics = {3, 1, 7};
    a.seed = 77;
    nlohmann::json j = a;
    auto b = j.get<ActionSpec>();
    CHECK(b.kind == a.kind);
    CHECK(b.topics == a.topics);
    CHECK(b.seed == a.seed);
    CHECK(b.describe() == a.describe());
}

TEST_CASE("preparation actions mutate the effective config") {
    auto art = make_baseline();

    ActionSpec stem_off;
    stem_off.kind = ActionKind::ToggleStemming;
    CHECK(mutated_pre_config(art, stem_off).stem == !art.pre.stem);

    ActionSpec stop_off;
    stop_off.kind = ActionKind::ToggleStopRemoval;
    CHECK(mutated_pre_config(art, stop_off).remove_stop_terms ==
          !art.pre.remove_stop_terms);

    ActionSpec rare;
    rare.kind = ActionKind::RemoveRareTerms;
    rare.threshold = 0.05;
    auto rare_cfg = mutated_pre_config(art, rare);
    REQUIRE(rare_cfg.rare_df_threshold.has_value());
    CHECK(*rare_cfg.rare_df_threshold == doctest::Approx(0.05));

    ActionSpec perturb;
    perturb.kind = ActionKind::PerturbStopList;
    perturb.add_count = 3;
    perturb.remove_count = 2;
    perturb.seed = 9;
    auto cfg = mutated_pre_config(art, perturb);
    CHECK(cfg.stop_additions.size() == 3);
    CHECK(cfg.stop_removals.size() == 2);
    for (const auto& t : cfg.stop_additions) {
        CHECK(std::find(art.stop_candidates.begin(), art.stop_candidates.end(), t) !=
              art.stop_candidates.end());
    }
    const auto& dsl = default_stop_list();
    for (const auto& t : cfg.stop_removals)
        CHECK(std::find(dsl.begin(), dsl.end(), t) != dsl.end());
    // same seed, same perturbation
    auto cfg2 = mutated_pre_config(art, perturb);
    CHECK(cfg.stop_additions == cfg2.stop_additions);
    CHECK(cfg.stop_removals == cfg2.stop_removals);
}

TEST_CASE("apply_action reruns the right stage") {
    auto art = make_baseline();

    ActionSpec stem_off;
    stem_off.kind = ActionKind::ToggleStemming;
    auto run = apply_action(art, stem_off);
    CHECK(run.stage == ActionStage::Preparation);

    ActionSpec setk;
    setk.kind = ActionKind::SetNumTopics;
    setk.k = 6;
    setk.seed = 12;
    auto mrun = apply_action(art, setk);
    CHECK(mrun.stage == ActionStage::Model);
    CHECK(mrun.model.n_topics() == 6);
    // the document-term matrix is untouched at the model stage
    CHECK(mrun.dtm.digest() == art.dtm.digest());

    ActionSpec split;
    split.kind = ActionKind::SplitTopic;
    split.topic = 0;
    split.seed = 5;
    auto arun = apply_action(art, split);
    CHECK(arun.stage == ActionStage::Assessment);
    CHECK(arun.dtm.digest() == art.dtm.digest());
    if (!arun.degenerate) CHECK(arun.model.n_topics() == art.model.n_topics() + 1);
}

TEST_CASE("remove documents shrinks the corpus deterministically") {
    auto art = make_baseline(40);
    ActionSpec rm;
    rm.kind = ActionKind::RemoveDocuments;
    rm.fraction = 0.25;
    rm.seed = 31;
    auto r1 = apply_action(art, rm);
    auto r2 = apply_action(art, rm);
    CHECK(r1.dtm.n_docs() == 60);  // 80 docs - 25%
    CHECK(r1.dtm.row_ids == r2.dtm.row_ids);

    rm.seed = 32;
    auto r3 = apply_action(art, rm);
    CHECK(r3.dtm.n_docs() == 60);
    CHECK(r1.dtm.row_ids != r3.dtm.row_ids);
}

TEST_CASE("split then merge restores the model exactly") {
    auto art = make_baseline(30, 4);

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        for (std::size_t topic = 0; topic < art.model.n_topics(); ++topic) {
            TopicModel m = art.model;
            Assignment a = art.assignment;
            if (!split_topic(m, a, art.dtm, topic, seed)) continue;
            REQUIRE(m.n_topics() == art.model.n_topics() + 1);

            merge_topics(m, a, {topic, art.model.n_topics()});
            REQUIRE(m.n_topics() == art.model.n_topics());
            CHECK(a.topic_of == art.assignment.topic_of);
            for (std::size_t d = 0; d < m.theta.size(); ++d)
                for (std::size_t t = 0; t < m.theta[d].size(); ++t)
                    CHECK(m.theta[d][t] == doctest::Approx(art.model.theta[d][t])
                                               .epsilon(1e-12));
        }
    }
}

TEST_CASE("merge moves theta mass into the lowest id") {
    auto art = make_baseline(30, 4);
    TopicModel m = art.model;
    Assignment a = art.assignment;
    merge_topics(m, a, {2, 0, 3});
    REQUIRE(m.n_topics() == 2);
    for (std::size_t d = 0; d < m.theta.size(); ++d) {
        double merged = art.model.theta[d][0] + art.model.theta[d][2] +
                        art.model.theta[d][3];
        CHECK(m.theta[d][0] == doctest::Approx(merged).epsilon(1e-9));
        CHECK(m.theta[d][1] == doctest::Approx(art.model.theta[d][1]).epsilon(1e-12));
    }

    TopicModel bad = art.model;
    Assignment ba = art.assignment;
    CHECK_THROWS_AS(merge_topics(bad, ba, {1}), ActionError);
    CHECK_THROWS_AS(merge_topics(bad, ba, {1, 1}), ActionError);
    CHECK_THROWS_AS(merge_topics(bad, ba, {0, 99}), ActionError);
}

TEST_CASE("stop addition candidates are frequent non-stop terms") {
    auto corpus = ts_test::two_group_corpus(20, 10);
    auto cands = stop_addition_candidates(corpus, PreprocessConfig{}, 15);
    CHECK(cands.size() <= 15);
    CHECK(!cands.empty());
    std::set<std::string> stop(default_stop_list().begin(), default_stop_list().end());
    for (const auto& t : cands) CHECK(stop.count(t) == 0);
}

TEST_CASE("invalidating actions raise ActionError") {
    auto art = make_baseline();
    ActionSpec rare;
    rare.kind = ActionKind::RemoveRareTerms;
    rare.threshold = 0.10;
    // tiny corpus: every term may fall below a high rare threshold
    ActionSpec impossible = rare;
    impossible.threshold = 1.5;
    CHECK_THROWS_AS(apply_action(art, impossible), std::exception);
}
