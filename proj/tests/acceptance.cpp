// End-to-end acceptance checks. Each test case prints exactly one
// "PASS criterion N" / "FAIL criterion N" line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "topicsim/harness.hpp"
#include "topicsim/report.hpp"

using namespace topicsim;

namespace {

void verdict(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    CHECK(ok);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> as_labels(const std::vector<std::size_t>& a) {
    std::vector<std::string> out;
    for (auto x : a) out.push_back("c" + std::to_string(x));
    return out;
}

double median(std::vector<double> v) {
    REQUIRE(!v.empty());
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Desk-scale fixture: a 2,000-document, 20-class newswire-like corpus and two
// executions of the same moderate sweep plan over it.
struct Desk {
    std::string dir;
    SimulationPlan plan;
    SweepResult sweep1, sweep2;
};

const Desk& desk() {
    static const Desk d = [] {
        Desk desk;
        desk.dir = ts_test::temp_dir("acceptance");
        auto corpus = ts_test::newswire_corpus(2000, 20);

        SimulationPlan plan;
        plan.corpus_path = ts_test::write_corpus_file(corpus, desk.dir);
        plan.master_seed = 42;
        plan.lda.k = 0;  // derive from the 20 labels
        plan.lda.iterations = 80;
        plan.counts.perturb_stop_list = 3;
        plan.counts.set_num_topics = 3;
        plan.counts.split_topics = 3;
        plan.metrics.pair_samples = 10000;
        plan.metrics.silhouette_max_sample = 800;

        plan.output_dir = desk.dir + "/sweep1";
        desk.sweep1 = run_sweep(plan, 1);
        plan.output_dir = desk.dir + "/sweep2";
        desk.sweep2 = run_sweep(plan, 1);
        desk.plan = plan;
        return desk;
    }();
    return d;
}

MetricsVector metric_vector(const std::vector<std::string>& gt,
                            const std::vector<std::size_t>& pred,
                            const std::vector<SparseRow>& features) {
    MetricsVector m;
    auto acc = class_accuracy(gt, pred);
    m.accuracy_mean = acc.mean;
    m.accuracy_weighted = acc.weighted_mean;
    auto pw = pairwise_f1_fmi_exact(gt, pred);
    m.f1 = pw.f1;
    m.fmi = pw.fmi;
    auto hcv = homogeneity_completeness_v(gt, pred);
    m.homogeneity = hcv.homogeneity;
    m.completeness = hcv.completeness;
    m.v_measure = hcv.v_measure;
    m.silhouette_rescaled = (silhouette(features, pred, 500, 7) + 1.0) / 2.0;
    return m;
}

}  // namespace

TEST_CASE("criterion 1: metric oracle equivalence") {
    bool ok = true;

    // exhaustive entropy-score comparison over all partition pairs of 6
    auto parts = ts_test::all_partitions(6);
    ok = ok && parts.size() == 203;
    for (const auto& gt : parts) {
        auto labels = as_labels(gt);
        for (const auto& pred : parts) {
            auto got = homogeneity_completeness_v(labels, pred);
            auto want = ts_test::hcv_oracle(gt, pred);
            ok = ok && std::abs(got.homogeneity - want.h) <= 1e-9 &&
                 std::abs(got.completeness - want.c) <= 1e-9 &&
                 std::abs(got.v_measure - want.v) <= 1e-9;
        }
    }

    // exact pair counting vs the contingency closed form
    topicsim::Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        auto gt = ts_test::random_partition(50, 2 + rng.uniform_index(7), rng);
        auto pred = ts_test::random_partition(50, 2 + rng.uniform_index(7), rng);
        auto got = pairwise_f1_fmi_exact(as_labels(gt), pred);
        auto want = ts_test::pair_oracle(gt, pred);
        ok = ok && got.counts.tp == want.tp && got.counts.fp == want.fp &&
             got.counts.fn == want.fn && got.counts.tn == want.tn &&
             std::abs(got.f1 - want.f1) <= 1e-12 &&
             std::abs(got.fmi - want.fmi) <= 1e-12;
    }

    // class-accuracy hand trace
    auto acc = class_accuracy({"A", "A", "B", "B"}, {1, 1, 1, 2});
    ok = ok && std::abs(acc.mean - 0.75) <= 1e-12;

    verdict(1, ok,
            "h/c/v vs entropy oracle (203x203 partitions, 1e-9), exact F1/FMI vs "
            "contingency closed form (100x50 docs), accuracy hand trace");
}

TEST_CASE("criterion 2: sampled-vs-exact convergence") {
    topicsim::Rng rng(202);
    auto gt_raw = ts_test::random_partition(200, 5, rng);
    auto gt = as_labels(gt_raw);
    std::vector<std::size_t> pred = gt_raw;
    for (auto& p : pred)  // correlated but imperfect clustering
        if (rng.uniform01() < 0.3) p = rng.uniform_index(6);

    auto exact = pairwise_f1_fmi_exact(gt, pred);
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto s = pairwise_f1_fmi_sampled(gt, pred, 10000, seed);
        if (std::abs(s.f1 - exact.f1) <= 0.03 && std::abs(s.fmi - exact.fmi) <= 0.03)
            ++within;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "10000-pair sampling within +/-0.03 of exact for %d/100 seeds "
                  "(need >= 95)", within);
    verdict(2, within >= 95, buf);
}

TEST_CASE("criterion 3: impact score identity and bounds") {
    const auto& d = desk();
    bool ok = d.sweep1.baseline.s_r.has_value() && *d.sweep1.baseline.s_r == 0.0;
    std::size_t checked = 0;
    for (const auto& rec : d.sweep1.runs) {
        if (rec.status != RunStatus::Ok) continue;
        ok = ok && rec.s_r.has_value() && *rec.s_r >= 0.0 && *rec.s_r <= 1.0;
        ++checked;
    }
    ok = ok && checked > 0;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "baseline S_r == 0 exactly; %zu run scores all in [0,1]", checked);
    verdict(3, ok, buf);
}

TEST_CASE("criterion 4: byte-identical metrics across executions") {
    const auto& d = desk();
    std::string a = slurp(d.dir + "/sweep1/metrics.csv");
    std::string b = slurp(d.dir + "/sweep2/metrics.csv");
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "two executions of the desk-scale sweep plan: metrics.csv "
                  "identical (%zu bytes)", a.size());
    verdict(4, !a.empty() && a == b, buf);
}

TEST_CASE("criterion 5: rank order of preparation actions at desk scale") {
    auto dir = ts_test::temp_dir("rankorder");
    auto corpus = ts_test::newswire_corpus(2000, 20);
    std::string corpus_path = ts_test::write_corpus_file(corpus, dir);

    int rare_beats_ubiq = 0, full_order = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimulationPlan plan;
        plan.corpus_path = corpus_path;
        plan.output_dir = dir + "/s" + std::to_string(seed);
        plan.master_seed = seed;
        plan.lda.k = 0;
        plan.lda.iterations = 80;
        plan.counts.perturb_stop_list = 0;
        plan.counts.toggle_stop_removal = 0;
        plan.counts.toggle_stemming = 1;
        plan.counts.remove_documents_per_fraction = 0;
        plan.counts.set_num_topics = 0;
        plan.counts.split_topics = 0;
        plan.counts.merge_per_n = 0;
        plan.metrics.silhouette_max_sample = 800;

        SweepResult sweep = run_sweep(plan, 1);
        std::vector<double> rare, ubiq;
        double rare10 = -1, ubiq75 = -1, stem_off = -1;
        for (const auto& rec : sweep.runs) {
            if (rec.status != RunStatus::Ok || !rec.action) continue;
            double s = *rec.s_r;
            switch (rec.action->kind) {
                case ActionKind::RemoveRareTerms:
                    rare.push_back(s);
                    if (std::abs(rec.action->threshold - 0.10) < 1e-12) rare10 = s;
                    break;
                case ActionKind::RemoveUbiquitousTerms:
                    ubiq.push_back(s);
                    if (std::abs(rec.action->threshold - 0.75) < 1e-12) ubiq75 = s;
                    break;
                case ActionKind::ToggleStemming:
                    stem_off = s;
                    break;
                default:
                    break;
            }
        }
        REQUIRE(!rare.empty());
        REQUIRE(!ubiq.empty());
        if (median(rare) > median(ubiq)) ++rare_beats_ubiq;
        if (rare10 > stem_off && stem_off > ubiq75 && ubiq75 >= 0) ++full_order;
    }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "median S_r rare > ubiquitous in %d/10 seeds (need >= 8); "
                  "rare@10%% > stemming-off > ubiquitous@75%% in %d/10 (need >= 7)",
                  rare_beats_ubiq, full_order);
    verdict(5, rare_beats_ubiq >= 8 && full_order >= 7, buf);
}

TEST_CASE("criterion 6: split/merge round trip") {
    auto corpus = ts_test::two_group_corpus(40, 30);
    PreprocessConfig pre;
    auto dtm = preprocess_corpus(corpus, pre);
    std::vector<std::string> gt;
    for (const auto& id : dtm.row_ids) gt.push_back(id.substr(0, 2));

    topicsim::Rng rng(606);
    std::size_t done = 0, attempts = 0;
    bool ok = true;
    while (done < 50 && attempts < 400 && ok) {
        ++attempts;
        LdaConfig lda;
        lda.k = 3 + rng.uniform_index(4);
        lda.iterations = 25;
        lda.seed = rng.next();
        TopicModel base = train_lda(dtm, lda);
        Assignment base_a = assign_topics(base);

        auto topic = static_cast<std::size_t>(rng.uniform_index(base.n_topics()));
        std::uint64_t split_seed = rng.next();

        TopicModel m = base;
        Assignment a = base_a;
        if (!split_topic(m, a, dtm, topic, split_seed)) continue;  // < 2 docs
        merge_topics(m, a, {topic, base.n_topics()});

        bool same = a.topic_of == base_a.topic_of && m.theta == base.theta;
        if (same) {
            auto mv_base = metric_vector(gt, base_a.topic_of, dtm.weights);
            auto mv_rt = metric_vector(gt, a.topic_of, dtm.weights);
            for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
                same = same && mv_base[i] == mv_rt[i];
        }
        ok = ok && same;
        ++done;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "assignment, theta, and metric vector restored exactly for "
                  "%zu/50 random (model, topic, seed) triples", done);
    verdict(6, ok && done == 50, buf);
}

TEST_CASE("criterion 7: relabel invariance") {
    auto corpus = ts_test::two_group_corpus(30, 25);
    PreprocessConfig pre;
    auto dtm = preprocess_corpus(corpus, pre);
    std::vector<std::string> gt;
    for (const auto& id : dtm.row_ids) gt.push_back(id.substr(0, 2));

    LdaConfig lda;
    lda.k = 5;
    lda.iterations = 30;
    TopicModel model = train_lda(dtm, lda);
    auto pred = assign_topics(model).topic_of;
    auto base_vec = metric_vector(gt, pred, dtm.weights);

    topicsim::Rng rng(707);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        auto perm = rng.sample_without_replacement(5, 5);  // random bijection
        std::vector<std::size_t> relabeled;
        for (auto p : pred) relabeled.push_back(perm[p]);
        auto vec = metric_vector(gt, relabeled, dtm.weights);
        for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
            ok = ok && vec[i] == base_vec[i];
    }
    verdict(7, ok,
            "100 random permutations of predicted topic ids leave all 8 metrics "
            "unchanged");
}

TEST_CASE("criterion 8: model sanity on disjoint vocabularies") {
    auto corpus = ts_test::two_group_corpus(100, 50);
    PreprocessConfig pre;
    auto dtm = preprocess_corpus(corpus, pre);
    std::vector<std::string> gt;
    for (const auto& id : dtm.row_ids) gt.push_back(id.substr(0, 2));

    double total = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LdaConfig lda;
        lda.k = 2;
        lda.iterations = 100;
        lda.seed = seed;
        TopicModel m = train_lda(dtm, lda);
        auto pred = assign_topics(m).topic_of;
        total += class_accuracy(gt, pred).mean;
    }
    double mean = total / 5.0;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "k=2 on two disjoint 50-word vocabularies: mean class accuracy "
                  "%.4f over 5 seeds (need >= 0.95)", mean);
    verdict(8, mean >= 0.95, buf);
}

TEST_CASE("criterion 9: report structure") {
    const auto& d = desk();
    const RunRecord& base = d.sweep1.baseline;
    bool ok = true;

    auto slices = pie_slices(base);
    double angle = 0;
    for (const auto& s : slices) angle += s.sweep_angle;
    ok = ok && std::abs(angle - 360.0) <= 1e-6;

    std::size_t k = base.topic_sizes.size();
    auto matrix = term_topic_matrix(base, 10, 5);
    ok = ok && matrix.terms.size() == 10 &&
         matrix.topics.size() == std::min<std::size_t>(5, k);

    auto gt = report_gt_map(d.sweep1);
    auto tiles = gt_treemap_tiles(base, gt, 400, 300);
    double total_docs = 0;
    for (const auto& t : tiles) total_docs += t.value;
    for (const auto& t : tiles) {
        double expect = 400.0 * 300.0 * t.value / total_docs;
        ok = ok && std::abs(t.w * t.h - expect) <= 0.005 * expect;
    }

    ReportSpec spec;
    spec.sweep_dir = d.plan.output_dir;
    auto out1 = ts_test::temp_dir("acc-report1");
    auto out2 = ts_test::temp_dir("acc-report2");
    spec.out_dir = out1;
    write_report(d.sweep1, spec);
    spec.out_dir = out2;
    write_report(d.sweep1, spec);

    namespace fs = std::filesystem;
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(out1)) {
        if (!e.is_regular_file()) continue;
        ++files;
        auto rel = fs::relative(e.path(), out1).string();
        ok = ok && fs::exists(out2 + "/" + rel) &&
             slurp(e.path().string()) == slurp(out2 + "/" + rel);
    }
    ok = ok && files > 0;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "pie closes to 360 deg, matrix 10 x min(5,K), treemap areas "
                  "within 0.5%%, re-render byte-identical (%zu files)", files);
    verdict(9, ok, buf);
}
