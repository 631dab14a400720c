#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topicsim/harness.hpp"
#include "topicsim/report.hpp"
#include "topicsim/reuters.hpp"

namespace {

topicsim::SimulationPlan load_plan_with_overrides(const std::string& path,
                                                  long long seed,
                                                  const std::string& gt_mode) {
    auto plan = topicsim::load_plan(path);
    if (seed >= 0) plan.master_seed = static_cast<std::uint64_t>(seed);
    if (gt_mode == "labels") plan.gt_mode = topicsim::GtMode::Labels;
    else if (gt_mode == "baseline") plan.gt_mode = topicsim::GtMode::BaselineAsGt;
    else if (!gt_mode.empty())
        throw CLI::ValidationError("--gt-mode must be 'labels' or 'baseline'");
    return plan;
}

void print_record(const topicsim::RunRecord& rec) {
    std::printf("%-24s", rec.run_id.c_str());
    if (rec.status != topicsim::RunStatus::Ok) {
        std::printf("  %s (%s)\n",
                    rec.status == topicsim::RunStatus::Degenerate ? "degenerate" : "failed",
                    rec.failure_reason.c_str());
        return;
    }
    std::printf("  s_r=%-8.4f", rec.s_r.value_or(0.0));
    auto names = topicsim::MetricsVector::names();
    for (std::size_t i = 0; i < names.size(); ++i)
        std::printf(" %s=%.4f", names[i], rec.metrics[i]);
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topicsim: simulated-user sweeps over a topic modelling pipeline"};
    app.require_subcommand(1);

    std::string plan_path, sweep_dir, out_path, gt_mode;
    long long seed = -1;
    std::size_t jobs = 0;
    std::vector<std::string> sgm_paths;
    bool body_only = false, keep_multilabel = false;

    auto* cmd_baseline = app.add_subcommand("baseline", "run the default pipeline only");
    cmd_baseline->add_option("plan", plan_path, "plan JSON file")->required();
    cmd_baseline->add_option("--seed", seed, "override the master seed");
    cmd_baseline->add_option("--gt-mode", gt_mode, "labels|baseline");

    auto* cmd_sweep = app.add_subcommand("sweep", "run the baseline plus all sampled actions");
    cmd_sweep->add_option("plan", plan_path, "plan JSON file")->required();
    cmd_sweep->add_option("--seed", seed, "override the master seed");
    cmd_sweep->add_option("--gt-mode", gt_mode, "labels|baseline");
    cmd_sweep->add_option("--jobs", jobs, "worker threads (0 = hardware default)");

    auto* cmd_rank = app.add_subcommand("rank", "rank a finished sweep by impact score");
    cmd_rank->add_option("sweep_dir", sweep_dir, "sweep output directory")->required();

    auto* cmd_report = app.add_subcommand("report", "render the HTML/SVG report for a sweep");
    cmd_report->add_option("sweep_dir", sweep_dir, "sweep output directory")->required();
    cmd_report->add_option("--out", out_path, "report directory (default <sweep_dir>/report)");

    auto* cmd_convert = app.add_subcommand("convert-reuters",
                                           "convert Reuters-21578 .sgm files to a corpus");
    cmd_convert->add_option("sgm", sgm_paths, "input .sgm files")->required();
    cmd_convert->add_option("--out", out_path, "output corpus file")->required();
    cmd_convert->add_flag("--body-only", body_only, "drop article titles");
    cmd_convert->add_flag("--keep-multilabel", keep_multilabel,
                          "keep documents with zero or several topic labels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_baseline) {
            auto plan = load_plan_with_overrides(plan_path, seed, gt_mode);
            auto rec = topicsim::run_baseline(plan);
            print_record(rec);
        } else if (*cmd_sweep) {
            auto plan = load_plan_with_overrides(plan_path, seed, gt_mode);
            auto sweep = topicsim::run_sweep(plan, jobs);
            std::printf("baseline + %zu runs -> %s\n", sweep.runs.size(),
                        plan.output_dir.c_str());
        } else if (*cmd_rank) {
            auto sweep = topicsim::load_sweep(sweep_dir);
            for (const auto& rec : topicsim::rank_actions(sweep.runs)) print_record(rec);
        } else if (*cmd_report) {
            auto sweep = topicsim::load_sweep(sweep_dir);
            topicsim::ReportSpec spec;
            spec.sweep_dir = sweep_dir;
            spec.out_dir = out_path;
            topicsim::write_report(sweep, spec);
            std::printf("report written to %s\n",
                        (out_path.empty() ? sweep_dir + "/report" : out_path).c_str());
        } else if (*cmd_convert) {
            topicsim::ReutersOptions opts;
            opts.body_only = body_only;
            opts.single_label_only = !keep_multilabel;
            std::size_t n = topicsim::convert_reuters(sgm_paths, out_path, opts);
            std::printf("wrote %zu documents to %s\n", n, out_path.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
