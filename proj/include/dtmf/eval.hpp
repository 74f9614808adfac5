#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dtmf/classify.hpp"
#include "dtmf/dtm.hpp"
#include "dtmf/weighting.hpp"

namespace dtmf {

enum class ReductionKind { RAW, LSA, CA };

// RAW classifies in the unprojected count space and reports under k = 0;
// LSA carries a WeightSpec; CA ignores it.
struct ReductionSpec {
    ReductionKind kind = ReductionKind::CA;
    WeightSpec weights;
};

std::string to_string(const ReductionSpec& r);
ReductionSpec reduction_from_string(const std::string& s);

enum class Protocol { TRAIN_TEST, KFOLD, LOOCV };

struct EvalSpec {
    ReductionSpec reduction;
    GroupDistanceMethod method = GroupDistanceMethod::CENTROID;
    std::vector<std::size_t> dims;       // ascending; ignored for RAW
    Protocol protocol = Protocol::KFOLD;
    std::size_t folds = 5;               // KFOLD only
    std::uint64_t seed = 0;
    std::vector<std::string> test_ids;   // TRAIN_TEST only
};

struct EvalReport {
    std::map<std::size_t, double> accuracy_by_dim;
    double max_accuracy = 0.0;
    std::size_t min_optimal_k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::string>> fold_assignments;  // held-out ids per fold
};

// Per fold: fit the reduction on training rows only (fold vocabulary, fold
// document frequencies), project the held-out documents, classify, and
// average fold accuracies per dimension. Held-out documents with no
// in-vocabulary terms count as misclassified.
EvalReport run_eval(const DocTermMatrix& m, const EvalSpec& spec);

// CSV rows "k,accuracy" (6 decimals), ascending k.
std::string sweep_report(const EvalReport& report);

// Deterministic fold split: seeded shuffle, then contiguous blocks.
std::vector<std::vector<std::size_t>> kfold_assignments(std::size_t n_docs, std::size_t folds,
                                                        std::uint64_t seed);

}  // namespace dtmf
