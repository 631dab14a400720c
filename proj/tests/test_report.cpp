#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "topicsim/harness.hpp"
#include "topicsim/report.hpp"

using namespace topicsim;

namespace {

SweepResult shared_sweep() {
    static SweepResult sweep = [] {
        auto dir = ts_test::temp_dir("report");
        auto corpus = ts_test::two_group_corpus(25, 20);
        SimulationPlan plan;
        plan.corpus_path = ts_test::write_corpus_file(corpus, dir);
        plan.output_dir = dir + "/sweep";
        plan.master_seed = 13;
        plan.lda.k = 3;
        plan.lda.iterations = 25;
        plan.counts.perturb_stop_list = 2;
        plan.counts.set_num_topics = 1;
        plan.counts.split_topics = 1;
        plan.counts.merge_per_n = 0;
        plan.counts.remove_documents_per_fraction = 0;
        plan.counts.remove_rare_per_threshold = 0;
        plan.counts.remove_ubiquitous_per_threshold = 0;
        plan.metrics.pair_samples = 1000;
        plan.metrics.silhouette_max_sample = 100;
        return run_sweep(plan, 2);
    }();
    return sweep;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("pie slices cover the full circle proportionally") {
    auto sweep = shared_sweep();
    auto slices = pie_slices(sweep.baseline);
    REQUIRE(!slices.empty());

    double total_angle = 0;
    std::size_t total_docs = 0;
    for (const auto& s : slices) {
        CHECK(s.sweep_angle > 0.0);
        total_angle += s.sweep_angle;
        total_docs += s.count;
    }
    CHECK(total_angle == doctest::Approx(360.0).epsilon(1e-9));
    CHECK(total_docs == sweep.baseline.doc_ids.size());
    CHECK(slices[0].start_angle == doctest::Approx(0.0));
    for (const auto& s : slices)
        CHECK(s.sweep_angle ==
              doctest::Approx(360.0 * s.count / total_docs).epsilon(1e-9));
}

TEST_CASE("term-topic matrix has the requested shape") {
    auto sweep = shared_sweep();
    auto m = term_topic_matrix(sweep.baseline, 10, 5);
    std::size_t k = sweep.baseline.topic_sizes.size();
    CHECK(m.topics.size() == std::min<std::size_t>(5, k));
    CHECK(m.terms.size() <= 10);
    REQUIRE(m.values.size() == m.terms.size());
    for (const auto& row : m.values) CHECK(row.size() == m.topics.size());

    // columns ordered by cluster size descending
    for (std::size_t i = 1; i < m.topics.size(); ++i)
        CHECK(sweep.baseline.topic_sizes[m.topics[i - 1]] >=
              sweep.baseline.topic_sizes[m.topics[i]]);
}

TEST_CASE("squarified treemap preserves areas inside the bounds") {
    std::vector<TreemapTile> tiles;
    for (double v : {10.0, 6.0, 4.0, 3.0, 2.0, 1.0}) tiles.push_back({"t", v});
    squarify(tiles, 0, 0, 100, 80);

    double total_value = 26.0, box_area = 100.0 * 80.0;
    double covered = 0;
    for (const auto& t : tiles) {
        CHECK(t.x >= -1e-9);
        CHECK(t.y >= -1e-9);
        CHECK(t.x + t.w <= 100 + 1e-9);
        CHECK(t.y + t.h <= 80 + 1e-9);
        double area = t.w * t.h;
        covered += area;
        CHECK(area == doctest::Approx(box_area * t.value / total_value).epsilon(1e-9));
    }
    CHECK(covered == doctest::Approx(box_area).epsilon(1e-9));
}

TEST_CASE("treemap tiles nest ground-truth classes inside topics") {
    auto sweep = shared_sweep();
    auto gt = report_gt_map(sweep);
    REQUIRE(!gt.empty());
    auto tiles = gt_treemap_tiles(sweep.baseline, gt, 400, 300);
    REQUIRE(!tiles.empty());

    double outer = 0;
    std::size_t docs = 0;
    for (const auto& t : tiles) {
        outer += t.w * t.h;
        docs += static_cast<std::size_t>(t.value + 0.5);
        double inner = 0;
        for (const auto& c : t.children) {
            inner += c.w * c.h;
            CHECK(c.color_value >= 0.0);
            CHECK(c.color_value <= 1.0 + 1e-9);
        }
        if (!t.children.empty())
            CHECK(inner == doctest::Approx(t.w * t.h).epsilon(1e-6));
    }
    CHECK(outer == doctest::Approx(400.0 * 300.0).epsilon(1e-6));
    CHECK(docs == sweep.baseline.doc_ids.size());

    // outer areas proportional to cluster sizes
    for (const auto& t : tiles)
        CHECK(t.w * t.h ==
              doctest::Approx(400.0 * 300.0 * t.value / docs).epsilon(1e-6));
}

TEST_CASE("renders are pure functions of the records") {
    auto sweep = shared_sweep();
    CHECK(render_topic_pie(sweep.baseline) == render_topic_pie(sweep.baseline));
    CHECK(render_term_topic_matrix(sweep.baseline) ==
          render_term_topic_matrix(sweep.baseline));
    auto gt = report_gt_map(sweep);
    CHECK(render_gt_treemap(sweep.baseline, gt) ==
          render_gt_treemap(sweep.baseline, gt));
    CHECK(render_impact_plot(sweep.runs) == render_impact_plot(sweep.runs));

    auto svg = render_topic_pie(sweep.baseline);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("write_report emits a stable document tree") {
    auto sweep = shared_sweep();
    ReportSpec spec;
    spec.sweep_dir = sweep.plan.output_dir;

    auto out1 = ts_test::temp_dir("report-out1");
    auto out2 = ts_test::temp_dir("report-out2");
    spec.out_dir = out1;
    write_report(sweep, spec);
    spec.out_dir = out2;
    write_report(sweep, spec);

    namespace fs = std::filesystem;
    REQUIRE(fs::exists(out1 + "/index.html"));
    REQUIRE(fs::exists(out2 + "/index.html"));

    std::vector<std::string> names;
    for (const auto& e : fs::recursive_directory_iterator(out1))
        if (e.is_regular_file())
            names.push_back(fs::relative(e.path(), out1).string());
    REQUIRE(!names.empty());
    for (const auto& name : names) {
        REQUIRE(fs::exists(out2 + "/" + name));
        CHECK(slurp(out1 + "/" + name) == slurp(out2 + "/" + name));
    }
}
