#include "topicsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "topicsim/corpus.hpp"

namespace fs = std::filesystem;

namespace topicsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// categorical palette, cycled by topic id
const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

const char* color_for(std::size_t i) { return kPalette[i % 10]; }

// white -> dark blue ramp for treemap cells
std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(247 + t * (33 - 247)));
    const int g = static_cast<int>(std::lround(251 + t * (102 - 251)));
    const int b = static_cast<int>(std::lround(255 + t * (172 - 255)));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::vector<PieSlice> pie_slices(const RunRecord& rec) {
    std::size_t total = 0;
    for (auto c : rec.topic_sizes) total += c;
    std::vector<PieSlice> slices;
    double angle = 0.0;
    for (std::size_t t = 0; t < rec.topic_sizes.size(); ++t) {
        if (rec.topic_sizes[t] == 0) continue;
        PieSlice s;
        s.topic = t;
        s.count = rec.topic_sizes[t];
        s.start_angle = angle;
        s.sweep_angle = 360.0 * static_cast<double>(rec.topic_sizes[t]) /
                        static_cast<double>(total);
        angle += s.sweep_angle;
        slices.push_back(s);
    }
    return slices;
}

std::string render_topic_pie(const RunRecord& rec) {
    const double cx = 180, cy = 180, r = 150;
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
        "viewBox=\"0 0 480 360\">\n";
    svg += "<title>Documents per topic cluster</title>\n";
    auto slices = pie_slices(rec);
    auto point = [&](double deg) {
        const double rad = (deg - 90.0) * M_PI / 180.0;  // 12 o'clock start
        return std::pair<double, double>{cx + r * std::cos(rad), cy + r * std::sin(rad)};
    };
    if (slices.size() == 1) {
        svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
               "\" fill=\"" + color_for(slices[0].topic) + "\" stroke=\"white\"/>\n";
    } else {
        for (const auto& s : slices) {
            auto [x0, y0] = point(s.start_angle);
            auto [x1, y1] = point(s.start_angle + s.sweep_angle);
            const int large = s.sweep_angle > 180.0 ? 1 : 0;
            svg += "<path d=\"M" + fmt(cx) + " " + fmt(cy) + " L" + fmt(x0) + " " +
                   fmt(y0) + " A" + fmt(r) + " " + fmt(r) + " 0 " +
                   std::to_string(large) + " 1 " + fmt(x1) + " " + fmt(y1) +
                   " Z\" fill=\"" + color_for(s.topic) +
                   "\" stroke=\"white\" stroke-width=\"1\"/>\n";
        }
    }
    // legend
    double ly = 20;
    for (const auto& s : slices) {
        svg += "<rect x=\"350\" y=\"" + fmt(ly - 10) +
               "\" width=\"12\" height=\"12\" fill=\"" + color_for(s.topic) + "\"/>\n";
        svg += "<text x=\"368\" y=\"" + fmt(ly) +
               "\" font-size=\"11\" font-family=\"sans-serif\">T" +
               std::to_string(s.topic) + " (" + std::to_string(s.count) + ")</text>\n";
        ly += 16;
        if (ly > 350) break;
    }
    svg += "</svg>\n";
    return svg;
}

TermTopicMatrix term_topic_matrix(const RunRecord& rec, std::size_t n_terms,
                                  std::size_t n_topics) {
    TermTopicMatrix m;

    // largest clusters first, ties by topic id
    std::vector<std::size_t> order(rec.topic_sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rec.topic_sizes[a] > rec.topic_sizes[b];
    });
    order.resize(std::min(n_topics, order.size()));
    m.topics = order;

    // rank terms by posterior summed across the selected topics' top lists
    std::map<std::string, double> summed;
    for (auto t : m.topics)
        if (t < rec.top_terms.size())
            for (const auto& [term, p] : rec.top_terms[t]) summed[term] += p;
    std::vector<std::pair<std::string, double>> ranked(summed.begin(), summed.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    ranked.resize(std::min(n_terms, ranked.size()));
    for (const auto& [term, p] : ranked) m.terms.push_back(term);

    m.values.assign(m.terms.size(), std::vector<double>(m.topics.size(), 0.0));
    for (std::size_t c = 0; c < m.topics.size(); ++c) {
        const auto t = m.topics[c];
        if (t >= rec.top_terms.size()) continue;
        for (const auto& [term, p] : rec.top_terms[t]) {
            auto it = std::find(m.terms.begin(), m.terms.end(), term);
            if (it != m.terms.end()) m.values[it - m.terms.begin()][c] = p;
        }
    }
    return m;
}

std::string render_term_topic_matrix(const RunRecord& rec, std::size_t n_terms,
                                     std::size_t n_topics) {
    auto m = term_topic_matrix(rec, n_terms, n_topics);
    const double cell = 44, left = 120, top = 50;
    const double width = left + cell * static_cast<double>(m.topics.size()) + 20;
    const double height = top + cell * static_cast<double>(m.terms.size()) + 20;

    double max_v = 0.0;
    for (const auto& row : m.values)
        for (double v : row) max_v = std::max(max_v, v);

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      fmt(width) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " +
                      fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<title>Top-term posterior across the largest topics</title>\n";
    for (std::size_t c = 0; c < m.topics.size(); ++c)
        svg += "<text x=\"" + fmt(left + cell * (c + 0.5)) + "\" y=\"" + fmt(top - 14) +
               "\" text-anchor=\"middle\" font-size=\"11\" "
               "font-family=\"sans-serif\">T" +
               std::to_string(m.topics[c]) + "</text>\n";
    for (std::size_t r = 0; r < m.terms.size(); ++r)
        svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(top + cell * (r + 0.6)) +
               "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" +
               esc(m.terms[r]) + "</text>\n";
    for (std::size_t r = 0; r < m.terms.size(); ++r) {
        for (std::size_t c = 0; c < m.topics.size(); ++c) {
            const double v = m.values[r][c];
            if (v <= 0.0 || max_v <= 0.0) continue;  // zero posterior: no mark
            // circle AREA proportional to the posterior
            const double radius = 0.5 * (cell - 6) * std::sqrt(v / max_v);
            svg += "<circle cx=\"" + fmt(left + cell * (c + 0.5)) + "\" cy=\"" +
                   fmt(top + cell * (r + 0.5)) + "\" r=\"" + fmt(radius) +
                   "\" fill=\"" + color_for(m.topics[c]) + "\" fill-opacity=\"0.8\"/>"
                   "\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_top_lists(const RunRecord& rec, std::size_t n_topics,
                             std::size_t n_docs, std::size_t n_terms) {
    // same topic selection as the matrix view
    std::vector<std::size_t> order(rec.topic_sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rec.topic_sizes[a] > rec.topic_sizes[b];
    });
    order.resize(std::min(n_topics, order.size()));

    std::string html = "<div class=\"top-lists\">\n";
    for (auto t : order) {
        html += "<div class=\"topic\"><h3>Topic " + std::to_string(t) + " (" +
                std::to_string(t < rec.topic_sizes.size() ? rec.topic_sizes[t] : 0) +
                " docs)</h3>\n<h4>Top terms</h4><ol>\n";
        if (t < rec.top_terms.size())
            for (std::size_t i = 0; i < std::min(n_terms, rec.top_terms[t].size()); ++i)
                html += "<li>" + esc(rec.top_terms[t][i].first) + " (" +
                        fmt(rec.top_terms[t][i].second) + ")</li>\n";
        html += "</ol>\n<h4>Top documents</h4><ol>\n";
        if (t < rec.top_docs.size())
            for (std::size_t i = 0; i < std::min(n_docs, rec.top_docs[t].size()); ++i)
                html += "<li>" + esc(rec.top_docs[t][i].first) + " (" +
                        fmt(rec.top_docs[t][i].second) + ")</li>\n";
        html += "</ol></div>\n";
    }
    html += "</div>\n";
    return html;
}

void squarify(std::vector<TreemapTile>& tiles, double x, double y, double w, double h) {
    // Bruls et al. squarified layout over value-sorted tiles.
    double total = 0.0;
    for (const auto& t : tiles) total += t.value;
    if (total <= 0.0 || tiles.empty()) return;
    const double scale = w * h / total;

    std::size_t start = 0;
    while (start < tiles.size()) {
        const double side = std::min(w, h);
        double row_sum = 0.0;
        double best_ratio = std::numeric_limits<double>::infinity();
        std::size_t end = start;
        // grow the row while the worst aspect ratio improves
        for (std::size_t i = start; i < tiles.size(); ++i) {
            const double area = tiles[i].value * scale;
            const double new_sum = row_sum + area;
            const double thickness = new_sum / side;
            double worst = 0.0;
            for (std::size_t j = start; j <= i; ++j) {
                const double a = tiles[j].value * scale;
                const double len = a / thickness;
                worst = std::max(worst, std::max(thickness / len, len / thickness));
            }
            if (worst <= best_ratio) {
                best_ratio = worst;
                row_sum = new_sum;
                end = i + 1;
            } else {
                break;
            }
        }
        if (end == start) { row_sum = tiles[start].value * scale; end = start + 1; }

        const double thickness = row_sum / side;
        double offset = 0.0;
        for (std::size_t j = start; j < end; ++j) {
            const double len = tiles[j].value * scale / thickness;
            if (w <= h) {  // horizontal row across the top
                tiles[j].x = x + offset;
                tiles[j].y = y;
                tiles[j].w = len;
                tiles[j].h = thickness;
            } else {  // vertical column on the left
                tiles[j].x = x;
                tiles[j].y = y + offset;
                tiles[j].w = thickness;
                tiles[j].h = len;
            }
            offset += len;
        }
        if (w <= h) {
            y += thickness;
            h -= thickness;
        } else {
            x += thickness;
            w -= thickness;
        }
        start = end;
    }
}

std::vector<TreemapTile> gt_treemap_tiles(const RunRecord& rec,
                                          const std::map<std::string, std::string>& gt,
                                          double width, double height) {
    // (topic -> class -> [count, sum of membership p])
    std::map<std::size_t, std::map<std::string, std::pair<std::size_t, double>>> cells;
    std::map<std::size_t, std::size_t> topic_docs;
    for (std::size_t i = 0; i < rec.doc_ids.size(); ++i) {
        auto it = gt.find(rec.doc_ids[i]);
        if (it == gt.end()) continue;
        const std::size_t topic = rec.assigned_topic[i];
        double p = 0.0;
        for (const auto& [t, prob] : rec.doc_topic_probs[i])
            if (t == topic) p = prob;
        auto& cell = cells[topic][it->second];
        ++cell.first;
        cell.second += p;
        ++topic_docs[topic];
    }

    std::vector<TreemapTile> outer;
    for (const auto& [topic, classes] : cells) {
        TreemapTile tile;
        tile.label = "T" + std::to_string(topic);
        tile.value = static_cast<double>(topic_docs[topic]);
        for (const auto& [cls, cnt_p] : classes) {
            TreemapTile inner;
            inner.label = cls;
            inner.value = static_cast<double>(cnt_p.first);
            inner.color_value = cnt_p.second / static_cast<double>(cnt_p.first);
            tile.children.push_back(std::move(inner));
        }
        std::stable_sort(tile.children.begin(), tile.children.end(),
                         [](const TreemapTile& a, const TreemapTile& b) {
                             if (a.value != b.value) return a.value > b.value;
                             return a.label < b.label;
                         });
        outer.push_back(std::move(tile));
    }
    std::stable_sort(outer.begin(), outer.end(),
                     [](const TreemapTile& a, const TreemapTile& b) {
                         if (a.value != b.value) return a.value > b.value;
                         return a.label < b.label;
                     });
    squarify(outer, 0, 0, width, height);
    for (auto& tile : outer)
        squarify(tile.children, tile.x, tile.y, tile.w, tile.h);
    return outer;
}

std::string render_gt_treemap(const RunRecord& rec,
                              const std::map<std::string, std::string>& gt) {
    const double width = 720, height = 480;
    auto tiles = gt_treemap_tiles(rec, gt, width, height);

    // color scale bounds: min-max of mean membership probability per figure
    double lo = 1.0, hi = 0.0;
    for (const auto& t : tiles)
        for (const auto& c : t.children) {
            lo = std::min(lo, c.color_value);
            hi = std::max(hi, c.color_value);
        }
    if (hi <= lo) { lo = 0.0; hi = 1.0; }

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"520\" "
        "viewBox=\"0 0 720 520\">\n<title>Ground-truth composition of predicted "
        "topics</title>\n";
    for (const auto& tile : tiles) {
        for (const auto& c : tile.children) {
            const double t = (c.color_value - lo) / (hi - lo);
            svg += "<rect x=\"" + fmt(c.x) + "\" y=\"" + fmt(c.y) + "\" width=\"" +
                   fmt(c.w) + "\" height=\"" + fmt(c.h) + "\" fill=\"" + ramp_color(t) +
                   "\" stroke=\"#dddddd\" stroke-width=\"0.5\"><title>" + esc(tile.label) +
                   " / " + esc(c.label) + ": " + fmt(c.value) + " docs, mean p=" +
                   fmt(c.color_value) + "</title></rect>\n";
        }
        // thick white separator around each predicted topic
        svg += "<rect x=\"" + fmt(tile.x) + "\" y=\"" + fmt(tile.y) + "\" width=\"" +
               fmt(tile.w) + "\" height=\"" + fmt(tile.h) +
               "\" fill=\"none\" stroke=\"white\" stroke-width=\"4\"/>\n";
        if (tile.w > 30 && tile.h > 16)
            svg += "<text x=\"" + fmt(tile.x + 6) + "\" y=\"" + fmt(tile.y + 14) +
                   "\" font-size=\"11\" font-family=\"sans-serif\">" + esc(tile.label) +
                   "</text>\n";
    }
    // legend: scale bounds are per-figure min/max of mean membership probability
    svg += "<text x=\"10\" y=\"505\" font-size=\"11\" font-family=\"sans-serif\">mean "
           "membership probability: " + fmt(lo) + "</text>\n";
    svg += "<rect x=\"230\" y=\"495\" width=\"120\" height=\"12\" "
           "fill=\"url(#ramp)\"/>\n<defs><linearGradient id=\"ramp\"><stop "
           "offset=\"0\" stop-color=\"" + ramp_color(0.0) + "\"/><stop offset=\"1\" "
           "stop-color=\"" + ramp_color(1.0) + "\"/></linearGradient></defs>\n";
    svg += "<text x=\"358\" y=\"505\" font-size=\"11\" font-family=\"sans-serif\">" +
           fmt(hi) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string render_impact_plot(const std::vector<RunRecord>& records) {
    // group ok runs by action kind, dot per run
    std::map<std::string, std::vector<double>> groups;
    double max_s = 0.0;
    for (const auto& r : records) {
        if (r.status != RunStatus::Ok || !r.s_r || !r.action) continue;
        groups[kind_slug(r.action->kind)].push_back(*r.s_r);
        max_s = std::max(max_s, *r.s_r);
    }
    const double width = 900, height = 420, left = 60, bottom = 360, top = 30;
    const double y_max = max_s > 0.0 ? max_s * 1.1 : 1.0;
    auto y_of = [&](double s) { return bottom - (bottom - top) * s / y_max; };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
                      "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
                      " " + fmt(height) + "\">\n<title>Impact score by action "
                      "kind</title>\n";
    // zero reference line, red
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y_of(0.0)) + "\" x2=\"" +
           fmt(width - 20) + "\" y2=\"" + fmt(y_of(0.0)) +
           "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    // y axis ticks
    for (int i = 0; i <= 4; ++i) {
        const double s = y_max * i / 4.0;
        svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(y_of(s) + 4) +
               "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" +
               fmt(s) + "</text>\n";
    }
    const double group_w =
        groups.empty() ? 0.0 : (width - left - 40) / static_cast<double>(groups.size());
    std::size_t gi = 0;
    for (const auto& [kind, values] : groups) {
        const double gx = left + group_w * (static_cast<double>(gi) + 0.5);
        svg += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(bottom + 30) +
               "\" text-anchor=\"middle\" font-size=\"9\" "
               "font-family=\"sans-serif\" transform=\"rotate(-20 " + fmt(gx) + " " +
               fmt(bottom + 30) + ")\">" + esc(kind) + "</text>\n";
        for (std::size_t i = 0; i < values.size(); ++i) {
            // deterministic horizontal spread inside the group
            const double frac = values.size() > 1
                                    ? static_cast<double>(i) /
                                          static_cast<double>(values.size() - 1)
                                    : 0.5;
            const double x = gx + (frac - 0.5) * std::min(group_w * 0.7, 60.0);
            svg += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y_of(values[i])) +
                   "\" r=\"3\" fill=\"" + color_for(gi) + "\" fill-opacity=\"0.7\"/>\n";
        }
        ++gi;
    }
    svg += "</svg>\n";
    return svg;
}

std::map<std::string, std::string> report_gt_map(const SweepResult& sweep) {
    std::map<std::string, std::string> gt;
    if (sweep.plan.gt_mode == GtMode::Labels) {
        try {
            Corpus corpus = load_corpus(sweep.plan.corpus_path);
            for (const auto& d : corpus.documents)
                if (!d.labels.empty()) gt[d.id] = d.labels.front();
        } catch (const CorpusError&) {
            // corpus moved since the sweep ran: treemap is skipped
        }
        return gt;
    }
    const auto& b = sweep.baseline;
    for (std::size_t i = 0; i < b.doc_ids.size(); ++i)
        gt[b.doc_ids[i]] = "topic_" + std::to_string(b.assigned_topic[i]);
    return gt;
}

namespace {

std::string run_page(const RunRecord& rec,
                     const std::map<std::string, std::string>& gt,
                     const ReportSpec& spec) {
    std::string html = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
                       "<title>" + esc(rec.run_id) + "</title></head><body>\n";
    html += "<h1>Run " + esc(rec.run_id) + "</h1>\n";
    html += "<p>action: " +
            esc(rec.action ? rec.action->describe() : std::string("baseline")) +
            " | stage: " + stage_name(rec.stage) + " | status: ";
    html += rec.status == RunStatus::Ok ? "ok"
            : rec.status == RunStatus::Degenerate ? "degenerate" : "failed";
    if (rec.s_r) html += " | impact S = " + fmt(*rec.s_r);
    html += "</p>\n<h2>Topic membership</h2>\n" + render_topic_pie(rec);
    html += "<h2>Term-topic matrix</h2>\n" +
            render_term_topic_matrix(rec, spec.n_top_terms, spec.n_top_topics);
    html += "<h2>Top documents and terms</h2>\n" +
            render_top_lists(rec, spec.n_top_topics, spec.n_top_docs, spec.n_top_terms);
    if (!gt.empty())
        html += "<h2>Ground-truth composition</h2>\n" + render_gt_treemap(rec, gt);
    else
        html += "<p>No ground truth available; treemap skipped.</p>\n";
    html += "</body></html>\n";
    return html;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw HarnessError("cannot write report file: " + path.string());
    out << content;
}

}  // namespace

void write_report(const SweepResult& sweep, const ReportSpec& spec) {
    fs::path out_dir = spec.out_dir.empty()
                           ? fs::path(spec.sweep_dir) / "report"
                           : fs::path(spec.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw HarnessError("cannot create report dir: " + out_dir.string());

    auto gt = report_gt_map(sweep);

    // baseline + min/median/max impact runs
    auto ranked = rank_actions(sweep.runs);
    std::vector<const RunRecord*> selected{&sweep.baseline};
    if (!ranked.empty()) {
        selected.push_back(&ranked.back());                    // min impact
        selected.push_back(&ranked[ranked.size() / 2]);        // median
        selected.push_back(&ranked.front());                   // max impact
    }
    // dedupe while keeping order
    std::vector<const RunRecord*> pages;
    for (auto* r : selected) {
        bool seen = false;
        for (auto* p : pages) seen = seen || p->run_id == r->run_id;
        if (!seen) pages.push_back(r);
    }

    std::string index = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
                        "<title>Simulation sweep report</title></head><body>\n"
                        "<h1>Simulation sweep report</h1>\n";
    index += "<h2>Impact by action kind</h2>\n" + render_impact_plot(sweep.runs);
    index += "<h2>Rendered runs</h2>\n<ul>\n";
    for (auto* r : pages) {
        const std::string page_name = r->run_id + ".html";
        write_file(out_dir / page_name, run_page(*r, gt, spec));
        write_file(out_dir / (r->run_id + "-pie.svg"), render_topic_pie(*r));
        write_file(out_dir / (r->run_id + "-matrix.svg"),
                   render_term_topic_matrix(*r, spec.n_top_terms, spec.n_top_topics));
        if (!gt.empty())
            write_file(out_dir / (r->run_id + "-treemap.svg"),
                       render_gt_treemap(*r, gt));
        index += "<li><a href=\"" + page_name + "\">" + esc(r->run_id) + "</a>";
        if (r->s_r) index += " (S = " + fmt(*r->s_r) + ")";
        index += "</li>\n";
    }
    index += "</ul>\n</body></html>\n";
    write_file(out_dir / "index.html", index);
    write_file(out_dir / "impact.svg", render_impact_plot(sweep.runs));
}

}  // namespace topicsim
