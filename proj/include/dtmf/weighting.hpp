#pragma once

#include <string>
#include <vector>

#include "dtmf/dtm.hpp"
#include "dtmf/matrix.hpp"

namespace dtmf {

enum class WeightKind { RAW, NROWL1, NROWL2, TFIDF };

std::string to_string(WeightKind k);
WeightKind weight_kind_from_string(const std::string& s);

struct WeightSpec {
    WeightKind kind = WeightKind::RAW;
    double log_base = 2.0;  // TFIDF only; must exceed 1
};

// Global term weights learned from the training matrix. Queries reuse these;
// document frequencies are never recomputed from query text.
struct FittedWeights {
    WeightSpec spec;
    std::vector<double> global_weights;   // G(j), all 1 unless TFIDF
    std::vector<double> doc_frequencies;  // df_j, TFIDF only (empty otherwise)
};

FittedWeights fit_weights(const DocTermMatrix& m, const WeightSpec& spec);

DenseMatrix apply_weights(const DocTermMatrix& m, const FittedWeights& w);

std::vector<double> weight_query(const std::vector<double>& q, const FittedWeights& w);

// Row-normalization kernels shared by apply_weights and weight_query.
void normalize_row_l1(std::span<double> row);
void normalize_row_l2(std::span<double> row);

}  // namespace dtmf
