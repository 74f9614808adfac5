#include "dtmf/lsa.hpp"

#include <string>

#include "dtmf/error.hpp"

namespace dtmf {

namespace {

void check_k(std::size_t k, std::size_t max_k) {
    if (k < 1 || k > max_k)
        fail("RankOutOfRange",
             "k=" + std::to_string(k) + " outside [1, " + std::to_string(max_k) + "]");
}

}  // namespace

LsaModel fit_lsa(const DocTermMatrix& m, const WeightSpec& spec, std::size_t k) {
    LsaModel model;
    model.spec = spec;
    model.weights = fit_weights(m, spec);
    model.svd = svd(apply_weights(m, model.weights));
    check_k(k, model.svd.sigma.size());
    model.k = k;
    model.doc_ids = m.docs;
    model.term_strings = m.terms;
    return model;
}

DenseMatrix doc_coordinates(const LsaModel& model, std::size_t k) {
    check_k(k, model.max_k());
    DenseMatrix out(model.svd.u.rows(), k);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = model.svd.u(i, j) * model.svd.sigma[j];
    return out;
}

DenseMatrix term_coordinates(const LsaModel& model, std::size_t k) {
    check_k(k, model.max_k());
    DenseMatrix out(model.svd.v.rows(), k);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = model.svd.v(i, j) * model.svd.sigma[j];
    return out;
}

std::vector<double> project_lsa(const LsaModel& model, const std::vector<double>& q,
                                std::size_t k) {
    check_k(k, model.max_k());
    const std::vector<double> wq = weight_query(q, model.weights);
    std::vector<double> out(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < wq.size(); ++t) acc += wq[t] * model.svd.v(t, j);
        out[j] = acc;
    }
    return out;
}

}  // namespace dtmf
