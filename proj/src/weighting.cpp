#include "dtmf/weighting.hpp"

#include <cmath>

#include "dtmf/error.hpp"

namespace dtmf {

std::string to_string(WeightKind k) {
    switch (k) {
        case WeightKind::RAW: return "raw";
        case WeightKind::NROWL1: return "nrowl1";
        case WeightKind::NROWL2: return "nrowl2";
        case WeightKind::TFIDF: return "tfidf";
    }
    fail("BadFormat", "unknown weight kind");
}

WeightKind weight_kind_from_string(const std::string& s) {
    if (s == "raw") return WeightKind::RAW;
    if (s == "nrowl1") return WeightKind::NROWL1;
    if (s == "nrowl2") return WeightKind::NROWL2;
    if (s == "tfidf") return WeightKind::TFIDF;
    fail("BadFormat", "unknown weight kind \"" + s + "\"");
}

void normalize_row_l1(std::span<double> row) {
    double s = 0.0;
    for (double x : row) s += x;
    if (s == 0.0) fail("ZeroRow", "cannot L1-normalize an all-zero row");
    for (double& x : row) x /= s;
}

void normalize_row_l2(std::span<double> row) {
    double s = 0.0;
    for (double x : row) s += x * x;
    if (s == 0.0) fail("ZeroRow", "cannot L2-normalize an all-zero row");
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : row) x *= inv;
}

FittedWeights fit_weights(const DocTermMatrix& m, const WeightSpec& spec) {
    if (!(spec.log_base > 1.0)) fail("BadFormat", "log_base must exceed 1");
    FittedWeights w;
    w.spec = spec;
    w.global_weights.assign(m.n_terms(), 1.0);
    if (spec.kind != WeightKind::TFIDF) return w;

    const double ndocs = static_cast<double>(m.n_docs());
    const double lb = std::log(spec.log_base);
    w.doc_frequencies.assign(m.n_terms(), 0.0);
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
        double df = 0.0;
        for (std::size_t i = 0; i < m.n_docs(); ++i)
            if (m.counts(i, j) > 0.0) df += 1.0;
        if (df == 0.0) fail("ZeroMargin", "term \"" + m.terms[j] + "\" occurs in no document");
        w.doc_frequencies[j] = df;
        w.global_weights[j] = 1.0 + std::log(ndocs / df) / lb;
    }
    return w;
}

DenseMatrix apply_weights(const DocTermMatrix& m, const FittedWeights& w) {
    if (w.global_weights.size() != m.n_terms())
        fail("DimensionMismatch", "weights were fitted on a different vocabulary");
    DenseMatrix out = m.counts;
    switch (w.spec.kind) {
        case WeightKind::RAW:
            break;
        case WeightKind::NROWL1:
            for (std::size_t i = 0; i < out.rows(); ++i) normalize_row_l1(out.row(i));
            break;
        case WeightKind::NROWL2:
            for (std::size_t i = 0; i < out.rows(); ++i) normalize_row_l2(out.row(i));
            break;
        case WeightKind::TFIDF:
            for (std::size_t i = 0; i < out.rows(); ++i)
                for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= w.global_weights[j];
            break;
    }
    return out;
}

std::vector<double> weight_query(const std::vector<double>& q, const FittedWeights& w) {
    if (q.size() != w.global_weights.size())
        fail("DimensionMismatch", "query length does not match the fitted vocabulary");
    bool any = false;
    for (double x : q)
        if (x != 0.0) any = true;
    if (!any) fail("ZeroQuery", "query vector is all zero");

    std::vector<double> out = q;
    switch (w.spec.kind) {
        case WeightKind::RAW:
            break;
        case WeightKind::NROWL1:
            normalize_row_l1(out);
            break;
        case WeightKind::NROWL2:
            normalize_row_l2(out);
            break;
        case WeightKind::TFIDF:
            for (std::size_t j = 0; j < out.size(); ++j) out[j] *= w.global_weights[j];
            break;
    }
    return out;
}

}  // namespace dtmf
