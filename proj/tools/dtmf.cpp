#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtmf/ca.hpp"
#include "dtmf/classify.hpp"
#include "dtmf/csv.hpp"
#include "dtmf/dtm.hpp"
#include "dtmf/error.hpp"
#include "dtmf/eval.hpp"
#include "dtmf/lsa.hpp"
#include "dtmf/model_io.hpp"
#include "dtmf/plot.hpp"
#include "dtmf/weighting.hpp"

namespace {

using dtmf::DenseMatrix;
using dtmf::fail;
using nlohmann::json;

struct PreprocessFlags {
    std::string stopwords_file;
    std::size_t min_term_freq = 10;
    bool keep_case = false;
    bool keep_punctuation = false;
    bool keep_numbers = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--min-term-freq", min_term_freq,
                        "Drop terms with total corpus frequency below this");
        cmd->add_option("--stopwords", stopwords_file, "File of stopwords, one per whitespace");
        cmd->add_flag("--keep-case", keep_case, "Skip lowercasing");
        cmd->add_flag("--keep-punctuation", keep_punctuation, "Keep punctuation characters");
        cmd->add_flag("--keep-numbers", keep_numbers, "Keep digit characters");
    }

    dtmf::PreprocessOptions options() const {
        dtmf::PreprocessOptions opts;
        opts.lowercase = !keep_case;
        opts.strip_punctuation = !keep_punctuation;
        opts.strip_numbers = !keep_numbers;
        opts.min_term_frequency = min_term_freq;
        if (!stopwords_file.empty()) opts.stopwords = dtmf::load_stopwords(stopwords_file);
        return opts;
    }
};

std::vector<std::size_t> parse_dims(const std::string& text) {
    const std::size_t sep = text.find("..");
    std::vector<std::size_t> dims;
    if (sep == std::string::npos) {
        dims.push_back(static_cast<std::size_t>(
            dtmf::parse_int(text, "--dims")));
    } else {
        const long long a = dtmf::parse_int(text.substr(0, sep), "--dims");
        const long long b = dtmf::parse_int(text.substr(sep + 2), "--dims");
        if (a < 1 || b < a) fail("BadFormat", "--dims expects A..B with 1 <= A <= B");
        for (long long k = a; k <= b; ++k) dims.push_back(static_cast<std::size_t>(k));
    }
    if (dims.empty() || dims[0] < 1) fail("BadFormat", "--dims values must be at least 1");
    return dims;
}

void write_text(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail("BadFile", "cannot write " + out_path);
    out << content;
}

std::string coords_csv(const std::vector<std::string>& ids, const DenseMatrix& coords) {
    std::ostringstream out;
    dtmf::CsvRow header{""};
    for (std::size_t j = 0; j < coords.cols(); ++j)
        header.push_back("dim" + std::to_string(j + 1));
    dtmf::write_csv_row(out, header);
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        dtmf::CsvRow row{ids[i]};
        for (std::size_t j = 0; j < coords.cols(); ++j)
            row.push_back(dtmf::format_double(coords(i, j)));
        dtmf::write_csv_row(out, row);
    }
    return out.str();
}

std::map<std::string, std::string> read_labels_file(const std::string& path) {
    std::map<std::string, std::string> labels;
    for (const dtmf::CsvRow& row : dtmf::read_csv_file(path)) {
        if (row.size() != 2) fail("BadFormat", path + ": labels rows must be (doc id, category)");
        labels[row[0]] = row[1];
    }
    return labels;
}

// Queries: either plain text (tokenized like build) or a counts CSV in the
// matrix format; columns are matched to the model vocabulary by term string.
std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> read_queries(
    const std::string& path, const std::string& format, const PreprocessFlags& pre) {
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> queries;
    if (format == "text") {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail("BadFile", "cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::map<std::string, double> acc;
        for (const std::string& tok : dtmf::tokenize(ss.str(), pre.options())) acc[tok] += 1.0;
        queries.emplace_back(path, std::vector<std::pair<std::string, double>>(acc.begin(),
                                                                               acc.end()));
        return queries;
    }
    if (format != "counts") fail("BadFormat", "--format must be text or counts");

    const auto rows = dtmf::read_csv_file(path);
    if (rows.size() < 2 || rows[0].size() < 2)
        fail("BadFormat", path + ": counts file needs a term header and data rows");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            fail("BadFormat", path + ": ragged row " + std::to_string(r + 1));
        std::vector<std::pair<std::string, double>> counts;
        for (std::size_t j = 1; j < rows[r].size(); ++j)
            counts.emplace_back(rows[0][j], dtmf::parse_double(rows[r][j], path));
        queries.emplace_back(rows[r][0], std::move(counts));
    }
    return queries;
}

std::vector<double> align_counts_to_terms(
    const std::vector<std::pair<std::string, double>>& counts,
    const std::vector<std::string>& terms) {
    dtmf::DocTermMatrix shim;
    shim.terms = terms;
    return dtmf::align_query_counts(shim, counts);
}

int cmd_build(const std::string& corpus_dir, const std::string& out_path,
              const std::string& labels_out, const PreprocessFlags& pre) {
    const auto corpus = dtmf::load_corpus_dir(corpus_dir);
    const dtmf::BuildResult built = dtmf::build_matrix(corpus, pre.options());
    dtmf::save_matrix_csv(built.matrix, out_path);
    if (!labels_out.empty()) dtmf::save_labels_csv(built.matrix, labels_out);

    json summary{{"documents", built.matrix.n_docs()},
                 {"terms", built.matrix.n_terms()},
                 {"dropped_documents", built.dropped_docs}};
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_fit(const std::string& matrix_path, const std::string& reduction,
            const std::string& out_path, std::size_t k, double log_base) {
    const dtmf::DocTermMatrix m = dtmf::load_matrix_csv(matrix_path);
    if (reduction == "ca") {
        std::vector<std::string> removed;
        const dtmf::DocTermMatrix clean = dtmf::drop_zero_columns(m, &removed);
        for (const std::string& t : removed)
            std::cerr << "warning: dropping empty term column \"" << t << "\"\n";
        dtmf::save_ca(dtmf::fit_ca(clean), out_path);
        return 0;
    }
    if (reduction == "raw")
        fail("BadFormat", "reduction raw fits no model; use lsa-raw for an unweighted SVD");

    const dtmf::ReductionSpec spec = dtmf::reduction_from_string(reduction);
    if (spec.kind != dtmf::ReductionKind::LSA) fail("BadFormat", "unsupported fit reduction");
    dtmf::WeightSpec ws = spec.weights;
    ws.log_base = log_base;
    const std::size_t max_k = std::min(m.n_docs(), m.n_terms());
    dtmf::save_lsa(dtmf::fit_lsa(m, ws, k == 0 ? std::min<std::size_t>(2, max_k) : k), out_path);
    return 0;
}

int cmd_coords(const std::string& model_path, const std::string& side, const std::string& kind,
               std::size_t k, const std::string& out_path) {
    const std::string type = dtmf::model_type(model_path);
    if (type == "lsa") {
        const dtmf::LsaModel model = dtmf::load_lsa(model_path);
        const std::size_t kk = k == 0 ? model.k : k;
        const DenseMatrix coords =
            side == "cols" ? dtmf::term_coordinates(model, kk) : dtmf::doc_coordinates(model, kk);
        write_text(out_path, coords_csv(side == "cols" ? model.term_strings : model.doc_ids,
                                        coords));
        return 0;
    }
    const dtmf::CaModel model = dtmf::load_ca(model_path);
    const std::size_t kk = k == 0 ? std::min<std::size_t>(2, model.rank) : k;
    const dtmf::Side s = side == "cols" ? dtmf::Side::COLS : dtmf::Side::ROWS;
    const dtmf::CoordKind ck =
        kind == "standard" ? dtmf::CoordKind::STANDARD : dtmf::CoordKind::PRINCIPAL;
    const DenseMatrix coords = dtmf::coordinates(model, s, ck, kk);
    write_text(out_path,
               coords_csv(s == dtmf::Side::COLS ? model.term_strings : model.doc_ids, coords));
    return 0;
}

int cmd_project(const std::string& model_path, const std::string& query_path,
                const std::string& format, std::size_t k, const std::string& out_path,
                const PreprocessFlags& pre) {
    const std::string type = dtmf::model_type(model_path);
    const auto queries = read_queries(query_path, format, pre);

    std::vector<std::string> ids;
    DenseMatrix coords;
    if (type == "lsa") {
        const dtmf::LsaModel model = dtmf::load_lsa(model_path);
        const std::size_t kk = k == 0 ? model.k : k;
        coords = DenseMatrix(queries.size(), kk);
        for (std::size_t i = 0; i < queries.size(); ++i) {
            ids.push_back(queries[i].first);
            const auto q = align_counts_to_terms(queries[i].second, model.term_strings);
            const auto p = dtmf::project_lsa(model, q, kk);
            for (std::size_t j = 0; j < kk; ++j) coords(i, j) = p[j];
        }
    } else {
        const dtmf::CaModel model = dtmf::load_ca(model_path);
        const std::size_t kk = k == 0 ? std::min<std::size_t>(2, model.rank) : k;
        coords = DenseMatrix(queries.size(), kk);
        for (std::size_t i = 0; i < queries.size(); ++i) {
            ids.push_back(queries[i].first);
            const auto q = align_counts_to_terms(queries[i].second, model.term_strings);
            const auto p = dtmf::project_row_ca(model, q, kk);
            for (std::size_t j = 0; j < kk; ++j) coords(i, j) = p[j];
        }
    }
    write_text(out_path, coords_csv(ids, coords));
    return 0;
}

int cmd_classify(const std::string& model_path, const std::string& query_path,
                 const std::string& labels_path, const std::string& method_name,
                 const std::string& dims_text, const std::string& format,
                 const std::string& out_path, const PreprocessFlags& pre) {
    const dtmf::GroupDistanceMethod method = dtmf::method_from_string(method_name);
    const auto labels = read_labels_file(labels_path);
    const std::string type = dtmf::model_type(model_path);
    const auto queries = read_queries(query_path, format, pre);
    const std::vector<std::size_t> dims = parse_dims(dims_text);

    json results = json::array();
    for (const auto& [qid, counts] : queries) {
        // Distances per label averaged over the requested dimensions; the
        // verdict is the smallest mean, ties to the smallest label.
        std::map<std::string, double> mean_dist;
        std::size_t used_dims = 0;
        auto accumulate = [&](const dtmf::Verdict& v) {
            for (const auto& [label, d] : v.distances) mean_dist[label] += d;
            ++used_dims;
        };

        if (type == "lsa") {
            const dtmf::LsaModel model = dtmf::load_lsa(model_path);
            std::vector<std::string> doc_labels;
            for (const std::string& id : model.doc_ids) {
                auto it = labels.find(id);
                if (it == labels.end()) fail("MissingLabels", "no label for document \"" + id + "\"");
                doc_labels.push_back(it->second);
            }
            const auto q = align_counts_to_terms(counts, model.term_strings);
            for (std::size_t k : dims) {
                const std::size_t kk = std::min(k, model.max_k());
                const dtmf::LabeledEmbedding emb{dtmf::doc_coordinates(model, kk), doc_labels};
                accumulate(dtmf::classify(dtmf::project_lsa(model, q, kk), emb, method));
            }
        } else {
            const dtmf::CaModel model = dtmf::load_ca(model_path);
            std::vector<std::string> doc_labels;
            for (const std::string& id : model.doc_ids) {
                auto it = labels.find(id);
                if (it == labels.end()) fail("MissingLabels", "no label for document \"" + id + "\"");
                doc_labels.push_back(it->second);
            }
            const auto q = align_counts_to_terms(counts, model.term_strings);
            for (std::size_t k : dims) {
                const std::size_t kk = std::min(k, model.rank);
                const dtmf::LabeledEmbedding emb{
                    dtmf::coordinates(model, dtmf::Side::ROWS, dtmf::CoordKind::PRINCIPAL, kk),
                    doc_labels};
                accumulate(dtmf::classify(dtmf::project_row_ca(model, q, kk), emb, method));
            }
        }

        std::string verdict;
        double best = 0.0;
        json dist_json;
        for (auto& [label, total] : mean_dist) {
            const double d = total / static_cast<double>(used_dims);
            dist_json[label] = d;
            if (verdict.empty() || d < best) {
                verdict = label;
                best = d;
            }
        }
        results.push_back(json{{"query", qid},
                               {"label", verdict},
                               {"method", method_name},
                               {"distances", dist_json}});
    }

    write_text(out_path, (results.size() == 1 ? results[0] : results).dump(2) + "\n");
    return 0;
}

int cmd_evaluate(const std::string& matrix_path, const std::string& labels_path,
                 const std::string& reduction, const std::string& method_name,
                 const std::string& protocol_name, std::size_t folds, std::uint64_t seed,
                 const std::string& dims_text, const std::string& test_ids_path,
                 const std::string& out_path, const std::string& summary_path) {
    dtmf::DocTermMatrix m = dtmf::load_matrix_csv(matrix_path);
    if (!labels_path.empty()) dtmf::load_labels_csv(m, labels_path);

    dtmf::EvalSpec spec;
    spec.reduction = dtmf::reduction_from_string(reduction);
    spec.method = dtmf::method_from_string(method_name);
    spec.folds = folds;
    spec.seed = seed;
    if (protocol_name == "train-test") {
        spec.protocol = dtmf::Protocol::TRAIN_TEST;
        if (test_ids_path.empty()) fail("BadFormat", "train-test needs --test-ids FILE");
        std::ifstream in(test_ids_path, std::ios::binary);
        if (!in) fail("BadFile", "cannot open " + test_ids_path);
        std::string id;
        while (std::getline(in, id)) {
            while (!id.empty() && (id.back() == '\r' || id.back() == ' ')) id.pop_back();
            if (!id.empty()) spec.test_ids.push_back(id);
        }
    } else if (protocol_name == "kfold") {
        spec.protocol = dtmf::Protocol::KFOLD;
    } else if (protocol_name == "loocv") {
        spec.protocol = dtmf::Protocol::LOOCV;
    } else {
        fail("BadFormat", "unknown protocol \"" + protocol_name + "\"");
    }

    if (!dims_text.empty()) {
        spec.dims = parse_dims(dims_text);
    } else {
        std::size_t top = std::min({m.n_docs(), m.n_terms(), std::size_t{450}});
        if (spec.reduction.kind == dtmf::ReductionKind::CA && top > 1) top -= 1;
        for (std::size_t k = 1; k <= top; ++k) spec.dims.push_back(k);
    }

    const dtmf::EvalReport report = dtmf::run_eval(m, spec);
    write_text(out_path, dtmf::sweep_report(report));

    json summary{{"reduction", reduction},
                 {"method", method_name},
                 {"protocol", protocol_name},
                 {"seed", report.seed},
                 {"folds", report.fold_assignments.size()},
                 {"max_accuracy", report.max_accuracy},
                 {"min_optimal_k", report.min_optimal_k}};
    if (!summary_path.empty()) write_text(summary_path, summary.dump(2) + "\n");
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_plot(const std::string& coords_path, const std::string& labels_path, bool axis_cross,
             const std::string& out_path) {
    const auto rows = dtmf::read_csv_file(coords_path);
    if (rows.size() < 2 || rows[0].size() < 2)
        fail("BadFormat", coords_path + ": expected a coordinates CSV");
    std::map<std::string, std::string> labels;
    if (!labels_path.empty()) labels = read_labels_file(labels_path);

    std::vector<dtmf::PlotPoint> points;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        dtmf::PlotPoint p;
        p.id = rows[r][0];
        p.x = dtmf::parse_double(rows[r][1], coords_path);
        p.y = rows[r].size() > 2 ? dtmf::parse_double(rows[r][2], coords_path) : 0.0;
        auto it = labels.find(p.id);
        if (it != labels.end()) p.label = it->second;
        points.push_back(std::move(p));
    }
    write_text(out_path, dtmf::render_scatter_svg(points, axis_cross));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Document-term matrix factorization toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> reductions{"raw",        "lsa-raw",   "lsa-nrowl1",
                                              "lsa-nrowl2", "lsa-tfidf", "ca"};
    const std::vector<std::string> methods{"centroid", "average", "single", "complete"};

    // build
    auto* build = app.add_subcommand("build", "Build a document-term matrix from a corpus dir");
    std::string corpus_dir, build_out, build_labels_out;
    PreprocessFlags build_pre;
    build->add_option("corpus", corpus_dir, "Corpus root: <root>/<category>/<docid>.txt")
        ->required();
    build->add_option("--out", build_out, "Matrix CSV output")->required();
    build->add_option("--labels-out", build_labels_out, "Labels sidecar CSV output");
    build_pre.attach(build);

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a reduction model on a matrix CSV");
    std::string fit_matrix, fit_reduction = "ca", fit_out;
    std::size_t fit_k = 0;
    double fit_log_base = 2.0;
    fit->add_option("matrix", fit_matrix, "Matrix CSV")->required();
    fit->add_option("--reduction", fit_reduction, "Reduction kind")
        ->check(CLI::IsMember(reductions));
    fit->add_option("--out", fit_out, "Model file output")->required();
    fit->add_option("--k", fit_k, "Default dimensionality stored in the model");
    fit->add_option("--log-base", fit_log_base, "Logarithm base for tfidf");

    // coords
    auto* coords = app.add_subcommand("coords", "Export fitted coordinates as CSV");
    std::string coords_model, coords_side = "rows", coords_kind = "principal", coords_out;
    std::size_t coords_k = 0;
    coords->add_option("model", coords_model, "Model file")->required();
    coords->add_option("--side", coords_side, "rows (documents) or cols (terms)")
        ->check(CLI::IsMember({"rows", "cols"}));
    coords->add_option("--kind", coords_kind, "standard or principal (ca models only)")
        ->check(CLI::IsMember({"standard", "principal"}));
    coords->add_option("--k", coords_k, "Number of dimensions");
    coords->add_option("--out", coords_out, "Output CSV (default stdout)");

    // project
    auto* project = app.add_subcommand("project", "Project out-of-sample documents");
    std::string project_model, project_query, project_format = "text", project_out;
    std::size_t project_k = 0;
    PreprocessFlags project_pre;
    project->add_option("model", project_model, "Model file")->required();
    project->add_option("query", project_query, "Query document (text or counts CSV)")
        ->required();
    project->add_option("--format", project_format, "text or counts")
        ->check(CLI::IsMember({"text", "counts"}));
    project->add_option("--k", project_k, "Number of dimensions");
    project->add_option("--out", project_out, "Output CSV (default stdout)");
    project_pre.attach(project);

    // classify
    auto* classify = app.add_subcommand("classify", "Assign a query to the nearest category");
    std::string cls_model, cls_query, cls_labels, cls_method = "centroid", cls_dims = "2",
                cls_format = "text", cls_out;
    PreprocessFlags cls_pre;
    classify->add_option("model", cls_model, "Model file")->required();
    classify->add_option("query", cls_query, "Query document")->required();
    classify->add_option("--labels", cls_labels, "Labels CSV for the training documents")
        ->required();
    classify->add_option("--method", cls_method, "Group distance method")
        ->check(CLI::IsMember(methods));
    classify->add_option("--k", cls_dims, "Single dimensionality");
    classify->add_option("--dims", cls_dims, "Dimension range A..B averaged into the verdict");
    classify->add_option("--format", cls_format, "text or counts")
        ->check(CLI::IsMember({"text", "counts"}));
    classify->add_option("--out", cls_out, "Output JSON (default stdout)");
    cls_pre.attach(classify);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Cross-validated accuracy sweep");
    std::string ev_matrix, ev_labels, ev_reduction = "ca", ev_method = "centroid",
                ev_protocol = "kfold", ev_dims, ev_test_ids, ev_out, ev_summary;
    std::size_t ev_folds = 5;
    std::uint64_t ev_seed = 0;
    evaluate->add_option("matrix", ev_matrix, "Matrix CSV")->required();
    evaluate->add_option("--labels", ev_labels, "Labels sidecar CSV");
    evaluate->add_option("--reduction", ev_reduction, "Reduction kind")
        ->check(CLI::IsMember(reductions));
    evaluate->add_option("--method", ev_method, "Group distance method")
        ->check(CLI::IsMember(methods));
    evaluate->add_option("--protocol", ev_protocol, "train-test, kfold, or loocv")
        ->check(CLI::IsMember({"train-test", "kfold", "loocv"}));
    evaluate->add_option("--folds", ev_folds, "Fold count for kfold");
    evaluate->add_option("--seed", ev_seed, "Shuffle seed");
    evaluate->add_option("--dims", ev_dims, "Dimension range A..B (default 1..min(rank,450))");
    evaluate->add_option("--test-ids", ev_test_ids, "File of held-out doc ids (train-test)");
    evaluate->add_option("--out", ev_out, "Sweep CSV output (default stdout)");
    evaluate->add_option("--summary", ev_summary, "Summary JSON output");

    // plot
    auto* plot = app.add_subcommand("plot", "Render a coordinates CSV as an SVG scatter");
    std::string plot_coords, plot_labels, plot_out;
    bool plot_axis_cross = false;
    plot->add_option("coords", plot_coords, "Coordinates CSV")->required();
    plot->add_option("--labels", plot_labels, "Labels CSV used for coloring");
    plot->add_flag("--axis-cross", plot_axis_cross, "Draw dashed axes through the origin");
    plot->add_option("--out", plot_out, "Output SVG (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(corpus_dir, build_out, build_labels_out, build_pre);
        if (fit->parsed()) return cmd_fit(fit_matrix, fit_reduction, fit_out, fit_k, fit_log_base);
        if (coords->parsed())
            return cmd_coords(coords_model, coords_side, coords_kind, coords_k, coords_out);
        if (project->parsed())
            return cmd_project(project_model, project_query, project_format, project_k,
                               project_out, project_pre);
        if (classify->parsed())
            return cmd_classify(cls_model, cls_query, cls_labels, cls_method, cls_dims,
                                cls_format, cls_out, cls_pre);
        if (evaluate->parsed())
            return cmd_evaluate(ev_matrix, ev_labels, ev_reduction, ev_method, ev_protocol,
                                ev_folds, ev_seed, ev_dims, ev_test_ids, ev_out, ev_summary);
        if (plot->parsed()) return cmd_plot(plot_coords, plot_labels, plot_axis_cross, plot_out);
    } catch (const dtmf::Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
