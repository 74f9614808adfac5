#include "dtmf/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "dtmf/ca.hpp"
#include "dtmf/error.hpp"
#include "dtmf/lsa.hpp"
#include "dtmf/parallel.hpp"

namespace dtmf {

std::string to_string(const ReductionSpec& r) {
    switch (r.kind) {
        case ReductionKind::RAW: return "raw";
        case ReductionKind::CA: return "ca";
        case ReductionKind::LSA: return "lsa-" + to_string(r.weights.kind);
    }
    fail("BadFormat", "unknown reduction");
}

ReductionSpec reduction_from_string(const std::string& s) {
    ReductionSpec r;
    if (s == "raw") {
        r.kind = ReductionKind::RAW;
    } else if (s == "ca") {
        r.kind = ReductionKind::CA;
    } else if (s.rfind("lsa-", 0) == 0) {
        r.kind = ReductionKind::LSA;
        r.weights.kind = weight_kind_from_string(s.substr(4));
    } else {
        fail("BadFormat", "unknown reduction \"" + s + "\"");
    }
    return r;
}

std::vector<std::vector<std::size_t>> kfold_assignments(std::size_t n_docs, std::size_t folds,
                                                        std::uint64_t seed) {
    if (folds < 2) fail("BadFormat", "need at least 2 folds");
    if (folds > n_docs) fail("BadFormat", "more folds than documents");

    std::vector<std::size_t> idx(n_docs);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is not pinned
    // down by the standard, and reports must be bit-reproducible everywhere.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n_docs - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(idx[i], idx[j]);
    }

    std::vector<std::vector<std::size_t>> out(folds);
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t lo = n_docs * f / folds;
        const std::size_t hi = n_docs * (f + 1) / folds;
        out[f].assign(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                      idx.begin() + static_cast<std::ptrdiff_t>(hi));
        std::sort(out[f].begin(), out[f].end());
    }
    return out;
}

namespace {

struct FoldOutcome {
    std::map<std::size_t, std::size_t> correct_by_k;
    std::size_t n_test = 0;
};

// Held-out counts re-expressed over the fold vocabulary (a subset of the
// full vocabulary after zero-column removal).
std::vector<double> align_to_fold(const DocTermMatrix& full, std::size_t row,
                                  const std::unordered_map<std::string, std::size_t>& full_index,
                                  const std::vector<std::string>& fold_terms) {
    std::vector<double> q(fold_terms.size(), 0.0);
    for (std::size_t j = 0; j < fold_terms.size(); ++j)
        q[j] = full.counts(row, full_index.at(fold_terms[j]));
    return q;
}

bool all_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

FoldOutcome run_fold(const DocTermMatrix& m, const EvalSpec& spec,
                     const std::unordered_map<std::string, std::size_t>& full_index,
                     const std::vector<std::size_t>& test_rows) {
    std::vector<std::size_t> train_rows;
    std::set<std::size_t> held(test_rows.begin(), test_rows.end());
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        if (!held.count(i)) train_rows.push_back(i);
    if (train_rows.empty()) fail("BadFormat", "a fold left no training documents");

    const DocTermMatrix train = drop_zero_columns(submatrix(m, train_rows));
    std::vector<std::string> train_labels;
    for (const std::string& id : train.docs) train_labels.push_back(train.labels.at(id));

    FoldOutcome out;
    out.n_test = test_rows.size();
    const std::vector<std::size_t> ks =
        spec.reduction.kind == ReductionKind::RAW ? std::vector<std::size_t>{0} : spec.dims;
    for (std::size_t k : ks) out.correct_by_k[k] = 0;

    std::vector<std::vector<double>> queries;
    std::vector<std::string> truths;
    for (std::size_t row : test_rows) {
        queries.push_back(align_to_fold(m, row, full_index, train.terms));
        truths.push_back(m.labels.at(m.docs[row]));
    }

    if (spec.reduction.kind == ReductionKind::RAW) {
        const LabeledEmbedding emb{train.counts, train_labels};
        for (std::size_t t = 0; t < queries.size(); ++t) {
            if (all_zero(queries[t])) continue;
            if (classify(queries[t], emb, spec.method).label == truths[t])
                ++out.correct_by_k[0];
        }
        return out;
    }

    if (spec.reduction.kind == ReductionKind::LSA) {
        const LsaModel model = fit_lsa(train, spec.reduction.weights, 1);
        for (std::size_t k : spec.dims) {
            const std::size_t k_eff = std::min(k, model.max_k());
            const LabeledEmbedding emb{doc_coordinates(model, k_eff), train_labels};
            for (std::size_t t = 0; t < queries.size(); ++t) {
                if (all_zero(queries[t])) continue;
                const std::vector<double> p = project_lsa(model, queries[t], k_eff);
                if (classify(p, emb, spec.method).label == truths[t]) ++out.correct_by_k[k];
            }
        }
        return out;
    }

    const CaModel model = fit_ca(train);
    if (model.rank == 0) return out;  // no geometry: every held-out doc is a miss
    for (std::size_t k : spec.dims) {
        const std::size_t k_eff = std::min(k, model.rank);
        const LabeledEmbedding emb{coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, k_eff),
                                   train_labels};
        for (std::size_t t = 0; t < queries.size(); ++t) {
            if (all_zero(queries[t])) continue;
            const std::vector<double> p = project_row_ca(model, queries[t], k_eff);
            if (classify(p, emb, spec.method).label == truths[t]) ++out.correct_by_k[k];
        }
    }
    return out;
}

}  // namespace

EvalReport run_eval(const DocTermMatrix& m, const EvalSpec& spec) {
    std::set<std::string> categories;
    for (const std::string& id : m.docs) {
        auto it = m.labels.find(id);
        if (it == m.labels.end()) fail("MissingLabels", "document \"" + id + "\" has no label");
        categories.insert(it->second);
    }
    if (categories.size() < 2) fail("SingleCategory", "need at least two categories");

    if (spec.reduction.kind != ReductionKind::RAW) {
        if (spec.dims.empty()) fail("BadFormat", "dimension list is empty");
        for (std::size_t i = 0; i < spec.dims.size(); ++i) {
            if (spec.dims[i] < 1) fail("BadFormat", "dimensions must be at least 1");
            if (i && spec.dims[i] <= spec.dims[i - 1])
                fail("BadFormat", "dimension list must be strictly ascending");
        }
    }

    std::vector<std::vector<std::size_t>> folds;
    switch (spec.protocol) {
        case Protocol::TRAIN_TEST: {
            if (spec.test_ids.empty()) fail("BadFormat", "train/test split needs test ids");
            std::unordered_map<std::string, std::size_t> pos;
            for (std::size_t i = 0; i < m.n_docs(); ++i) pos.emplace(m.docs[i], i);
            std::vector<std::size_t> test;
            for (const std::string& id : spec.test_ids) {
                auto it = pos.find(id);
                if (it == pos.end()) fail("BadFormat", "unknown test document \"" + id + "\"");
                test.push_back(it->second);
            }
            std::sort(test.begin(), test.end());
            test.erase(std::unique(test.begin(), test.end()), test.end());
            if (test.size() == m.n_docs()) fail("BadFormat", "every document is in the test set");
            folds.push_back(std::move(test));
            break;
        }
        case Protocol::KFOLD:
            folds = kfold_assignments(m.n_docs(), spec.folds, spec.seed);
            break;
        case Protocol::LOOCV:
            for (std::size_t i = 0; i < m.n_docs(); ++i) folds.push_back({i});
            break;
    }

    std::unordered_map<std::string, std::size_t> full_index;
    for (std::size_t j = 0; j < m.n_terms(); ++j) full_index.emplace(m.terms[j], j);

    std::vector<FoldOutcome> outcomes(folds.size());
    parallel_for(folds.size(), [&](std::size_t f) {
        outcomes[f] = run_fold(m, spec, full_index, folds[f]);
    });

    EvalReport report;
    report.seed = spec.seed;
    for (const auto& fold : folds) {
        report.fold_assignments.emplace_back();
        for (std::size_t row : fold) report.fold_assignments.back().push_back(m.docs[row]);
    }

    const std::vector<std::size_t> ks =
        spec.reduction.kind == ReductionKind::RAW ? std::vector<std::size_t>{0} : spec.dims;
    for (std::size_t k : ks) {
        double acc = 0.0;
        for (const FoldOutcome& o : outcomes)
            acc += static_cast<double>(o.correct_by_k.at(k)) / static_cast<double>(o.n_test);
        report.accuracy_by_dim[k] = acc / static_cast<double>(outcomes.size());
    }

    report.max_accuracy = 0.0;
    for (const auto& [k, acc] : report.accuracy_by_dim)
        report.max_accuracy = std::max(report.max_accuracy, acc);
    for (const auto& [k, acc] : report.accuracy_by_dim)
        if (acc == report.max_accuracy) {
            report.min_optimal_k = k;  // map iterates ascending, first hit is minimal
            break;
        }
    return report;
}

std::string sweep_report(const EvalReport& report) {
    if (report.accuracy_by_dim.empty()) fail("BadFormat", "empty report");
    std::string out;
    char buf[64];
    for (const auto& [k, acc] : report.accuracy_by_dim) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f\n", k, acc);
        out += buf;
    }
    return out;
}

}  // namespace dtmf
