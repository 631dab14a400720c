#include "topicsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <thread>

#include "topicsim/rng.hpp"

namespace fs = std::filesystem;

namespace topicsim {

namespace {

const char* weighting_name(Weighting w) {
    return w == Weighting::Tf ? "tf" : "tfidf";
}

Weighting weighting_from_name(const std::string& s) {
    if (s == "tf") return Weighting::Tf;
    if (s == "tfidf") return Weighting::TfIdf;
    throw HarnessError("unknown weighting: " + s);
}

nlohmann::json pre_to_json(const PreprocessConfig& c) {
    nlohmann::json j{
        {"remove_stop_terms", c.remove_stop_terms},
        {"stop_additions", c.stop_additions},
        {"stop_removals", c.stop_removals},
        {"stem", c.stem},
        {"min_token_length", c.min_token_length},
        {"drop_numeric_tokens", c.drop_numeric_tokens},
        {"weighting", weighting_name(c.weighting)},
    };
    if (c.rare_df_threshold) j["rare_df_threshold"] = *c.rare_df_threshold;
    if (c.ubiquitous_df_threshold)
        j["ubiquitous_df_threshold"] = *c.ubiquitous_df_threshold;
    if (c.stop_list_override) j["stop_list_override"] = *c.stop_list_override;
    return j;
}

PreprocessConfig pre_from_json(const nlohmann::json& j) {
    PreprocessConfig c;
    c.remove_stop_terms = j.value("remove_stop_terms", c.remove_stop_terms);
    c.stop_additions = j.value("stop_additions", c.stop_additions);
    c.stop_removals = j.value("stop_removals", c.stop_removals);
    c.stem = j.value("stem", c.stem);
    c.min_token_length = j.value("min_token_length", c.min_token_length);
    c.drop_numeric_tokens = j.value("drop_numeric_tokens", c.drop_numeric_tokens);
    // explicit nulls mean "unset", same as omitting the key
    auto set = [&j](const char* key) {
        return j.contains(key) && !j.at(key).is_null();
    };
    if (set("rare_df_threshold"))
        c.rare_df_threshold = j.at("rare_df_threshold").get<double>();
    if (set("ubiquitous_df_threshold"))
        c.ubiquitous_df_threshold = j.at("ubiquitous_df_threshold").get<double>();
    c.weighting = weighting_from_name(j.value("weighting", std::string("tfidf")));
    if (set("stop_list_override"))
        c.stop_list_override = j.at("stop_list_override").get<std::vector<std::string>>();
    else if (set("stop_list_file"))
        c.stop_list_override = load_stop_list_file(j.at("stop_list_file").get<std::string>());
    return c;
}

nlohmann::json lda_to_json(const LdaConfig& c) {
    return {{"k", c.k},
            {"alpha", c.alpha},
            {"beta", c.beta},
            {"iterations", c.iterations},
            {"seed", c.seed}};
}

LdaConfig lda_from_json(const nlohmann::json& j) {
    LdaConfig c;
    c.k = j.value("k", c.k);
    c.alpha = j.value("alpha", c.alpha);
    c.beta = j.value("beta", c.beta);
    c.iterations = j.value("iterations", c.iterations);
    c.seed = j.value("seed", c.seed);
    return c;
}

double round6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::uint64_t config_digest(const PreprocessConfig& pre, const LdaConfig& lda) {
    nlohmann::json j{{"preprocess", pre_to_json(pre)}, {"lda", lda_to_json(lda)}};
    // an explicit override already serializes; otherwise pin the shipped list
    if (!pre.stop_list_override) j["default_stop_list"] = default_stop_list();
    return fnv1a(j.dump());
}

nlohmann::json plan_to_json(const SimulationPlan& p) {
    return {
        {"corpus", p.corpus_path},
        {"output_dir", p.output_dir},
        {"master_seed", p.master_seed},
        {"gt_mode", p.gt_mode == GtMode::Labels ? "labels" : "baseline_as_gt"},
        {"preprocess", pre_to_json(p.pre)},
        {"lda", lda_to_json(p.lda)},
        {"actions",
         {{"perturb_stop_list", p.counts.perturb_stop_list},
          {"toggle_stop_removal", p.counts.toggle_stop_removal},
          {"toggle_stemming", p.counts.toggle_stemming},
          {"remove_rare_per_threshold", p.counts.remove_rare_per_threshold},
          {"remove_ubiquitous_per_threshold", p.counts.remove_ubiquitous_per_threshold},
          {"remove_documents_per_fraction", p.counts.remove_documents_per_fraction},
          {"set_num_topics", p.counts.set_num_topics},
          {"split_topics", p.counts.split_topics},
          {"merge_per_n", p.counts.merge_per_n}}},
        {"metrics",
         {{"pair_samples", p.metrics.pair_samples},
          {"silhouette_max_sample", p.metrics.silhouette_max_sample}}},
    };
}

SimulationPlan plan_from_json(const nlohmann::json& j) {
    SimulationPlan p;
    p.corpus_path = j.at("corpus").get<std::string>();
    p.output_dir = j.value("output_dir", p.output_dir);
    p.master_seed = j.value("master_seed", p.master_seed);
    const auto mode = j.value("gt_mode", std::string("labels"));
    if (mode == "labels") p.gt_mode = GtMode::Labels;
    else if (mode == "baseline_as_gt") p.gt_mode = GtMode::BaselineAsGt;
    else throw HarnessError("unknown gt_mode: " + mode);
    if (j.contains("preprocess")) p.pre = pre_from_json(j.at("preprocess"));
    if (j.contains("lda")) p.lda = lda_from_json(j.at("lda"));
    if (j.contains("actions")) {
        const auto& a = j.at("actions");
        auto& c = p.counts;
        c.perturb_stop_list = a.value("perturb_stop_list", c.perturb_stop_list);
        c.toggle_stop_removal = a.value("toggle_stop_removal", c.toggle_stop_removal);
        c.toggle_stemming = a.value("toggle_stemming", c.toggle_stemming);
        c.remove_rare_per_threshold =
            a.value("remove_rare_per_threshold", c.remove_rare_per_threshold);
        c.remove_ubiquitous_per_threshold =
            a.value("remove_ubiquitous_per_threshold", c.remove_ubiquitous_per_threshold);
        c.remove_documents_per_fraction =
            a.value("remove_documents_per_fraction", c.remove_documents_per_fraction);
        c.set_num_topics = a.value("set_num_topics", c.set_num_topics);
        c.split_topics = a.value("split_topics", c.split_topics);
        c.merge_per_n = a.value("merge_per_n", c.merge_per_n);
    }
    if (j.contains("metrics")) {
        const auto& m = j.at("metrics");
        p.metrics.pair_samples = m.value("pair_samples", p.metrics.pair_samples);
        p.metrics.silhouette_max_sample =
            m.value("silhouette_max_sample", p.metrics.silhouette_max_sample);
    }
    return p;
}

SimulationPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open plan file: " + path);
    return plan_from_json(nlohmann::json::parse(in));
}

void save_plan(const SimulationPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw HarnessError("cannot write plan file: " + path);
    out << plan_to_json(plan).dump(2) << '\n';
}

namespace {

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::Degenerate: return "degenerate";
        case RunStatus::Failed: return "failed";
    }
    return "?";
}

RunStatus status_from_name(const std::string& s) {
    if (s == "ok") return RunStatus::Ok;
    if (s == "degenerate") return RunStatus::Degenerate;
    if (s == "failed") return RunStatus::Failed;
    throw HarnessError("unknown run status: " + s);
}

// ground truth lookup: doc id -> label
using GtMap = std::map<std::string, std::string>;

GtMap gt_from_labels(const Corpus& corpus) {
    GtMap gt;
    for (const auto& d : corpus.documents)
        if (!d.labels.empty()) gt[d.id] = d.labels.front();
    return gt;
}

GtMap gt_from_assignment(const std::vector<std::string>& doc_ids,
                         const Assignment& assignment) {
    GtMap gt;
    for (std::size_t i = 0; i < doc_ids.size(); ++i)
        gt[doc_ids[i]] = "topic_" + std::to_string(assignment.topic_of[i]);
    return gt;
}

struct MetricsOutcome {
    MetricsVector vec;
    std::vector<std::string> imputed;
};

// Computes the M=8 vector; anything that fails on a degenerate run is
// imputed with the baseline value (or 0 when computing the baseline itself)
// and flagged.
MetricsOutcome compute_metrics(const RunArtifacts& run, const GtMap& gt,
                               const MetricsSettings& settings, std::uint64_t seed,
                               const MetricsVector* baseline) {
    MetricsOutcome out;
    auto impute = [&](std::size_t idx, const char* name) {
        out.vec[idx] = baseline ? (*baseline)[idx] : 0.0;
        out.imputed.push_back(name);
    };

    std::vector<std::string> gt_labels;
    std::vector<std::size_t> pred;
    for (std::size_t i = 0; i < run.dtm.row_ids.size(); ++i) {
        auto it = gt.find(run.dtm.row_ids[i]);
        if (it == gt.end()) continue;
        gt_labels.push_back(it->second);
        pred.push_back(run.assignment.topic_of[i]);
    }

    try {
        auto acc = class_accuracy(gt_labels, pred);
        out.vec.accuracy_mean = acc.mean;
        out.vec.accuracy_weighted = acc.weighted_mean;
    } catch (const MetricsError&) {
        impute(0, "accuracy_mean");
        impute(1, "accuracy_weighted");
    }
    try {
        PairwiseResult pw =
            settings.pair_samples == 0
                ? pairwise_f1_fmi_exact(gt_labels, pred)
                : pairwise_f1_fmi_sampled(gt_labels, pred, settings.pair_samples,
                                          Rng::mix(seed, 101));
        out.vec.f1 = pw.f1;
        out.vec.fmi = pw.fmi;
    } catch (const MetricsError&) {
        impute(2, "f1");
        impute(3, "fmi");
    }
    try {
        auto hcv = homogeneity_completeness_v(gt_labels, pred);
        out.vec.homogeneity = hcv.homogeneity;
        out.vec.completeness = hcv.completeness;
        out.vec.v_measure = hcv.v_measure;
    } catch (const MetricsError&) {
        impute(4, "homogeneity");
        impute(5, "completeness");
        impute(6, "v_measure");
    }
    try {
        const double s = silhouette(run.dtm.weights, run.assignment.topic_of,
                                    settings.silhouette_max_sample, Rng::mix(seed, 202));
        out.vec.silhouette_rescaled = (s + 1.0) / 2.0;
    } catch (const MetricsError&) {
        impute(7, "silhouette_rescaled");
    }
    return out;
}

constexpr std::size_t kTopN = 100;
constexpr double kProbFloor = 0.001;

void fill_model_outputs(RunRecord& rec, const RunArtifacts& run) {
    const auto& model = run.model;
    const std::size_t k = model.n_topics();
    rec.doc_ids = run.dtm.row_ids;
    rec.assigned_topic = run.assignment.topic_of;
    rec.topic_sizes.assign(k, 0);
    for (auto t : run.assignment.topic_of) ++rec.topic_sizes[t];

    rec.doc_topic_probs.resize(model.n_docs());
    for (std::size_t d = 0; d < model.n_docs(); ++d)
        for (std::size_t t = 0; t < k; ++t)
            if (model.theta[d][t] > kProbFloor)
                rec.doc_topic_probs[d].emplace_back(t, round6(model.theta[d][t]));

    rec.top_terms.resize(k);
    rec.top_docs.resize(k);
    for (std::size_t t = 0; t < k; ++t) {
        rec.top_terms[t] = top_terms(model, t, kTopN);
        rec.top_docs[t] = top_documents(model, t, kTopN);
        for (auto& [name, p] : rec.top_terms[t]) p = round6(p);
        for (auto& [name, p] : rec.top_docs[t]) p = round6(p);
    }

    if (k > 1) {
        auto dist = topic_distances(model.phi);
        double kl = 0.0, js = 0.0, cos = 0.0;
        const double pairs = static_cast<double>(k * (k - 1));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                if (i == j) continue;
                kl += dist.kl[i][j];
                js += dist.js[i][j];
                cos += dist.cosine[i][j];
            }
        rec.mean_kl = round6(kl / pairs);
        rec.mean_js = round6(js / pairs);
        rec.mean_cosine = round6(cos / pairs);
    }
}

std::string make_run_id(std::size_t ordinal, const ActionSpec& action) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03zu", ordinal);
    return std::string(buf) + "-" + kind_slug(action.kind);
}

}  // namespace

nlohmann::json record_to_json(const RunRecord& rec) {
    nlohmann::json j;
    j["run_id"] = rec.run_id;
    if (rec.action) j["action"] = *rec.action;
    else j["action"] = "baseline";
    j["stage"] = stage_name(rec.stage);
    j["config_digest"] = rec.config_digest;
    j["status"] = status_name(rec.status);
    if (!rec.failure_reason.empty()) j["failure_reason"] = rec.failure_reason;
    nlohmann::json m;
    for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
        m[MetricsVector::names()[i]] = rec.metrics[i];
    j["metrics"] = m;
    if (rec.s_r) j["s_r"] = *rec.s_r;
    j["imputed_metrics"] = rec.imputed_metrics;
    j["doc_ids"] = rec.doc_ids;
    j["assigned_topic"] = rec.assigned_topic;
    j["doc_topic_probs"] = rec.doc_topic_probs;
    j["topic_sizes"] = rec.topic_sizes;
    j["top_terms"] = rec.top_terms;
    j["top_docs"] = rec.top_docs;
    j["mean_kl"] = rec.mean_kl;
    j["mean_js"] = rec.mean_js;
    j["mean_cosine"] = rec.mean_cosine;
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord rec;
    rec.run_id = j.at("run_id").get<std::string>();
    if (j.at("action").is_object())
        rec.action = j.at("action").get<ActionSpec>();
    const auto stage = j.at("stage").get<std::string>();
    for (auto s : {ActionStage::Preparation, ActionStage::Model, ActionStage::Assessment})
        if (stage_name(s) == stage) rec.stage = s;
    rec.config_digest = j.at("config_digest").get<std::uint64_t>();
    rec.status = status_from_name(j.at("status").get<std::string>());
    rec.failure_reason = j.value("failure_reason", std::string{});
    for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
        rec.metrics[i] = j.at("metrics").value(MetricsVector::names()[i], 0.0);
    if (j.contains("s_r")) rec.s_r = j.at("s_r").get<double>();
    rec.imputed_metrics = j.value("imputed_metrics", rec.imputed_metrics);
    rec.doc_ids = j.value("doc_ids", rec.doc_ids);
    rec.assigned_topic = j.value("assigned_topic", rec.assigned_topic);
    rec.doc_topic_probs = j.value("doc_topic_probs", rec.doc_topic_probs);
    rec.topic_sizes = j.value("topic_sizes", rec.topic_sizes);
    rec.top_terms = j.value("top_terms", rec.top_terms);
    rec.top_docs = j.value("top_docs", rec.top_docs);
    rec.mean_kl = j.value("mean_kl", 0.0);
    rec.mean_js = j.value("mean_js", 0.0);
    rec.mean_cosine = j.value("mean_cosine", 0.0);
    return rec;
}

namespace {

LdaConfig resolve_lda(const SimulationPlan& plan, const Corpus& corpus) {
    LdaConfig lda = plan.lda;
    if (lda.k == 0) {
        if (plan.gt_mode == GtMode::Labels && !corpus.label_set.empty())
            lda.k = corpus.label_set.size();
        else
            lda.k = 10;
    }
    return lda;
}

GtMap resolve_gt(const SimulationPlan& plan, const Corpus& corpus,
                 const BaselineArtifacts& baseline) {
    if (plan.gt_mode == GtMode::Labels) {
        auto gt = gt_from_labels(corpus);
        if (gt.empty())
            throw HarnessError("gt_mode=labels but the corpus has no labels");
        return gt;
    }
    return gt_from_assignment(baseline.dtm.row_ids, baseline.assignment);
}

}  // namespace

RunRecord run_baseline(const SimulationPlan& plan, const Corpus& corpus,
                       BaselineArtifacts& artifacts_out) {
    BaselineArtifacts& art = artifacts_out;
    art.corpus = corpus;
    art.pre = plan.pre;
    art.pre.validate();
    art.lda = resolve_lda(plan, corpus);
    art.dtm = preprocess_corpus(corpus, art.pre);
    if (art.lda.k > art.dtm.n_docs())
        throw HarnessError("baseline: k exceeds document count");
    art.model = train_lda(art.dtm, art.lda);
    art.assignment = assign_topics(art.model);
    art.stop_candidates = stop_addition_candidates(corpus, art.pre);

    RunRecord rec;
    rec.run_id = "baseline";
    rec.stage = ActionStage::Preparation;
    rec.config_digest = config_digest(art.pre, art.lda);

    RunArtifacts as_run{art.dtm, art.model, art.assignment, ActionStage::Preparation};
    GtMap gt = resolve_gt(plan, corpus, art);
    auto outcome = compute_metrics(as_run, gt, plan.metrics,
                                   Rng::mix(plan.master_seed, 0xBA5E), nullptr);
    rec.metrics = outcome.vec;
    rec.imputed_metrics = outcome.imputed;
    rec.s_r = 0.0;
    fill_model_outputs(rec, as_run);
    return rec;
}

RunRecord run_baseline(const SimulationPlan& plan) {
    Corpus corpus = load_corpus(plan.corpus_path);
    BaselineArtifacts art;
    return run_baseline(plan, corpus, art);
}

std::string metrics_csv(const SweepResult& sweep) {
    std::string csv =
        "run_id,action,stage,status,s_r,accuracy_mean,accuracy_weighted,f1,fmi,"
        "homogeneity,completeness,v_measure,silhouette_rescaled,imputed,config_digest\n";
    auto emit = [&csv](const RunRecord& r) {
        std::string action = r.action ? r.action->describe() : "baseline";
        std::replace(action.begin(), action.end(), ',', '+');
        csv += r.run_id + "," + action + "," + stage_name(r.stage) + "," +
               status_name(r.status) + ",";
        csv += r.s_r ? fmt10(*r.s_r) : std::string{};
        for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
            csv += "," + fmt10(r.metrics[i]);
        std::string imputed;
        for (std::size_t i = 0; i < r.imputed_metrics.size(); ++i)
            imputed += (i ? ";" : "") + r.imputed_metrics[i];
        char digest[24];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(r.config_digest));
        csv += "," + imputed + "," + digest + "\n";
    };
    emit(sweep.baseline);
    for (const auto& r : sweep.runs) emit(r);
    return csv;
}

SweepResult run_sweep(const SimulationPlan& plan_in, std::size_t jobs) {
    SimulationPlan plan = plan_in;
    if (const char* env = std::getenv("TOPICSIM_OUTPUT_DIR"))
        plan.output_dir = env;

    Corpus corpus = load_corpus(plan.corpus_path);
    SweepResult sweep;
    sweep.plan = plan;

    BaselineArtifacts baseline;
    sweep.baseline = run_baseline(plan, corpus, baseline);
    GtMap gt = resolve_gt(plan, corpus, baseline);

    auto actions = sample_action_plan(corpus.size(), baseline.lda.k,
                                      plan.master_seed, plan.counts);
    sweep.runs.resize(actions.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= actions.size()) break;
            const ActionSpec& action = actions[i];
            RunRecord rec;
            rec.run_id = make_run_id(i, action);
            rec.action = action;
            rec.stage = action.stage();
            try {
                RunArtifacts run = apply_action(baseline, action);
                switch (run.stage) {
                    case ActionStage::Preparation: {
                        rec.config_digest = config_digest(
                            mutated_pre_config(baseline, action), baseline.lda);
                        // document removal reshapes the corpus, not the config;
                        // fold its parameters in so the run identity still moves
                        if (action.kind == ActionKind::RemoveDocuments) {
                            std::uint64_t frac_bits;
                            static_assert(sizeof frac_bits == sizeof action.fraction);
                            std::memcpy(&frac_bits, &action.fraction, sizeof frac_bits);
                            rec.config_digest = Rng::mix(
                                Rng::mix(rec.config_digest, frac_bits), action.seed);
                        }
                        break;
                    }
                    case ActionStage::Model: {
                        LdaConfig lda = baseline.lda;
                        lda.k = action.k;
                        lda.seed = action.seed;
                        rec.config_digest = config_digest(baseline.pre, lda);
                        break;
                    }
                    case ActionStage::Assessment:
                        rec.config_digest = config_digest(baseline.pre, baseline.lda);
                        break;
                }
                auto outcome = compute_metrics(run, gt, plan.metrics, action.seed,
                                               &sweep.baseline.metrics);
                rec.metrics = outcome.vec;
                rec.imputed_metrics = outcome.imputed;
                if (run.degenerate) {
                    rec.status = RunStatus::Degenerate;
                    rec.failure_reason = run.degenerate_reason;
                } else {
                    rec.status = RunStatus::Ok;
                    rec.s_r = impact_score(sweep.baseline.metrics, rec.metrics);
                }
                fill_model_outputs(rec, run);
            } catch (const std::exception& e) {
                rec.status = RunStatus::Failed;
                rec.failure_reason = e.what();
                rec.config_digest = config_digest(baseline.pre, baseline.lda);
            }
            sweep.runs[i] = std::move(rec);
        }
    };

    std::size_t n_jobs = jobs ? jobs : std::thread::hardware_concurrency();
    if (n_jobs < 1) n_jobs = 1;
    n_jobs = std::min(n_jobs, actions.size() ? actions.size() : std::size_t{1});
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // persist
    fs::path dir(plan.output_dir);
    std::error_code ec;
    fs::create_directories(dir / "runs", ec);
    if (ec) throw HarnessError("cannot create output dir: " + dir.string());
    save_plan(plan, (dir / "plan.json").string());
    {
        std::ofstream out(dir / "baseline.json");
        out << record_to_json(sweep.baseline).dump();
    }
    for (const auto& r : sweep.runs) {
        std::ofstream out(dir / "runs" / (r.run_id + ".json"));
        out << record_to_json(r).dump();
    }
    {
        std::ofstream out(dir / "metrics.csv", std::ios::binary);
        if (!out) throw HarnessError("cannot write metrics.csv");
        out << metrics_csv(sweep);
    }
    return sweep;
}

std::vector<RunRecord> rank_actions(const std::vector<RunRecord>& records) {
    std::vector<RunRecord> ok;
    for (const auto& r : records)
        if (r.status == RunStatus::Ok && r.s_r) ok.push_back(r);
    std::stable_sort(ok.begin(), ok.end(), [](const RunRecord& a, const RunRecord& b) {
        if (*a.s_r != *b.s_r) return *a.s_r > *b.s_r;
        return a.run_id < b.run_id;
    });
    return ok;
}

SweepResult load_sweep(const std::string& dir) {
    SweepResult sweep;
    fs::path base(dir);
    sweep.plan = load_plan((base / "plan.json").string());
    {
        std::ifstream in(base / "baseline.json");
        if (!in) throw HarnessError("missing baseline.json in " + dir);
        sweep.baseline = record_from_json(nlohmann::json::parse(in));
    }
    std::vector<fs::path> files;
    if (fs::exists(base / "runs"))
        for (const auto& e : fs::directory_iterator(base / "runs"))
            if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        sweep.runs.push_back(record_from_json(nlohmann::json::parse(in)));
    }
    return sweep;
}

}  // namespace topicsim
