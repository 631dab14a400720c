#pragma once

#include <map>
#include <string>
#include <vector>

#include "topicsim/harness.hpp"

namespace topicsim {

struct ReportSpec {
    std::string sweep_dir;
    std::string out_dir;  // default: <sweep_dir>/report
    std::size_t n_top_terms = 10;
    std::size_t n_top_topics = 5;
    std::size_t n_top_docs = 5;
};

// --- geometry, exposed for testing ---------------------------------------

struct PieSlice {
    std::size_t topic = 0;
    std::size_t count = 0;
    double start_angle = 0.0;  // degrees, clockwise from 12 o'clock
    double sweep_angle = 0.0;
};

// One slice per nonempty topic, angles proportional to document counts.
std::vector<PieSlice> pie_slices(const RunRecord& rec);

struct TermTopicMatrix {
    std::vector<std::string> terms;    // rows: top corpus-wide terms
    std::vector<std::size_t> topics;   // columns: largest topics
    std::vector<std::vector<double>> values;  // terms x topics posterior
};

// Rows are the terms with the highest posterior summed across topics (from
// the record's stored top-term lists), columns the largest clusters.
TermTopicMatrix term_topic_matrix(const RunRecord& rec, std::size_t n_terms = 10,
                                  std::size_t n_topics = 5);

struct TreemapTile {
    std::string label;
    double value = 0.0;        // area share input
    double x = 0, y = 0, w = 0, h = 0;
    double color_value = 0.0;  // mean membership probability (inner tiles)
    std::vector<TreemapTile> children;
};

// Squarified layout; tiles must arrive sorted by value descending.
void squarify(std::vector<TreemapTile>& tiles, double x, double y, double w, double h);

// Outer tiles = predicted topics, inner tiles = ground-truth classes.
std::vector<TreemapTile> gt_treemap_tiles(const RunRecord& rec,
                                          const std::map<std::string, std::string>& gt,
                                          double width, double height);

// --- renderers (pure functions of the records) ---------------------------

std::string render_topic_pie(const RunRecord& rec);
std::string render_term_topic_matrix(const RunRecord& rec, std::size_t n_terms = 10,
                                     std::size_t n_topics = 5);
std::string render_top_lists(const RunRecord& rec, std::size_t n_topics = 5,
                             std::size_t n_docs = 5, std::size_t n_terms = 10);
std::string render_gt_treemap(const RunRecord& rec,
                              const std::map<std::string, std::string>& gt);
std::string render_impact_plot(const std::vector<RunRecord>& records);

// Ground-truth lookup for the treemap: document labels, or the baseline
// run's predicted topics in baseline_as_gt mode.
std::map<std::string, std::string> report_gt_map(const SweepResult& sweep);

// Writes report/index.html plus per-run pages and standalone SVGs for the
// baseline and the min/median/max impact runs.
void write_report(const SweepResult& sweep, const ReportSpec& spec);

}  // namespace topicsim
