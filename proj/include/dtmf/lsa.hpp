#pragma once

#include <string>
#include <vector>

#include "dtmf/dtm.hpp"
#include "dtmf/svd.hpp"
#include "dtmf/weighting.hpp"

namespace dtmf {

// Holds the full decomposition of the weighted matrix; k is a default view
// width, and every accessor takes an explicit k so dimension sweeps never
// refit.
struct LsaModel {
    WeightSpec spec;
    FittedWeights weights;
    SvdResult svd;
    std::size_t k = 0;
    std::vector<std::string> doc_ids;
    std::vector<std::string> term_strings;

    std::size_t max_k() const { return svd.sigma.size(); }
};

LsaModel fit_lsa(const DocTermMatrix& m, const WeightSpec& spec, std::size_t k);

// Rows of U_k diag(sigma_k) / V_k diag(sigma_k): distance-faithful coordinates.
DenseMatrix doc_coordinates(const LsaModel& model, std::size_t k);
DenseMatrix term_coordinates(const LsaModel& model, std::size_t k);

// Out-of-sample document: weighted query times V_k.
std::vector<double> project_lsa(const LsaModel& model, const std::vector<double>& q,
                                std::size_t k);

}  // namespace dtmf
