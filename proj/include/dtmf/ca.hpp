#pragma once

#include <string>
#include <vector>

#include "dtmf/dtm.hpp"
#include "dtmf/svd.hpp"

namespace dtmf {

enum class Side { ROWS, COLS };
enum class CoordKind { STANDARD, PRINCIPAL };

// Fitted correspondence analysis. phi and gamma keep only the rank retained
// dimensions; principal coordinates are the standard ones scaled by sigma.
struct CaModel {
    DenseMatrix p;                 // correspondence matrix, sums to 1
    std::vector<double> row_masses;
    std::vector<double> col_masses;
    SvdResult svd;                 // of the standardized residuals
    DenseMatrix phi;               // docs x rank
    DenseMatrix gamma;             // terms x rank
    std::size_t rank = 0;
    double total_inertia = 0.0;
    std::vector<std::string> doc_ids;
    std::vector<std::string> term_strings;
};

DenseMatrix standardized_residuals(const DocTermMatrix& m);

CaModel fit_ca(const DocTermMatrix& m);

DenseMatrix coordinates(const CaModel& model, Side side, CoordKind kind, std::size_t k);

double chi2_distance(const DocTermMatrix& m, Side side, std::size_t a, std::size_t b);

// Max violation of D_r^{-1} P gamma = phi Sigma and D_c^{-1} P^T phi = gamma Sigma.
double transition_check(const CaModel& model);

// Supplementary row: profile of q times gamma_k, on the principal scale.
std::vector<double> project_row_ca(const CaModel& model, const std::vector<double>& q,
                                   std::size_t k);

}  // namespace dtmf
