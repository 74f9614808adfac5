#include "dtmf/ca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dtmf/error.hpp"

namespace dtmf {

namespace {

struct CaMargins {
    double total = 0.0;
    std::vector<double> r;  // row masses, sum 1
    std::vector<double> c;  // column masses, sum 1
};

CaMargins ca_margins(const DocTermMatrix& m) {
    if (m.n_docs() == 0 || m.n_terms() == 0) fail("EmptyMatrix", "empty contingency table");
    CaMargins mg;
    mg.r.assign(m.n_docs(), 0.0);
    mg.c.assign(m.n_terms(), 0.0);
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        for (std::size_t j = 0; j < m.n_terms(); ++j) {
            const double x = m.counts(i, j);
            mg.r[i] += x;
            mg.c[j] += x;
            mg.total += x;
        }
    if (mg.total <= 0.0) fail("ZeroMargin", "contingency table is all zero");
    for (std::size_t i = 0; i < m.n_docs(); ++i) {
        if (mg.r[i] <= 0.0) fail("ZeroMargin", "document \"" + m.docs[i] + "\" has zero margin");
        mg.r[i] /= mg.total;
    }
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
        if (mg.c[j] <= 0.0) fail("ZeroMargin", "term \"" + m.terms[j] + "\" has zero margin");
        mg.c[j] /= mg.total;
    }
    return mg;
}

void check_k(std::size_t k, std::size_t rank) {
    if (k < 1 || k > rank)
        fail("RankOutOfRange",
             "k=" + std::to_string(k) + " outside [1, " + std::to_string(rank) + "]");
}

}  // namespace

DenseMatrix standardized_residuals(const DocTermMatrix& m) {
    const CaMargins mg = ca_margins(m);
    DenseMatrix s(m.n_docs(), m.n_terms());
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        for (std::size_t j = 0; j < m.n_terms(); ++j) {
            const double p = m.counts(i, j) / mg.total;
            const double e = mg.r[i] * mg.c[j];
            s(i, j) = (p - e) / std::sqrt(e);
        }
    return s;
}

CaModel fit_ca(const DocTermMatrix& m) {
    const CaMargins mg = ca_margins(m);

    CaModel model;
    model.doc_ids = m.docs;
    model.term_strings = m.terms;
    model.row_masses = mg.r;
    model.col_masses = mg.c;
    model.p = DenseMatrix(m.n_docs(), m.n_terms());
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        for (std::size_t j = 0; j < m.n_terms(); ++j) model.p(i, j) = m.counts(i, j) / mg.total;

    model.svd = svd(standardized_residuals(m));

    // Residuals always annihilate the sqrt-mass vector, so at least one
    // singular value is exactly noise; and CA singular values never exceed 1,
    // which makes an absolute cutoff sound even for near-independent tables
    // whose leading value is itself noise.
    const std::size_t cap = std::min(m.n_docs(), m.n_terms()) - 1;
    std::size_t rank = 0;
    for (double s : model.svd.sigma)
        if (s > kRankTol) ++rank;
    model.rank = std::min(rank, cap);

    for (double s : model.svd.sigma) model.total_inertia += s * s;

    model.phi = DenseMatrix(m.n_docs(), model.rank);
    for (std::size_t i = 0; i < m.n_docs(); ++i) {
        const double inv = 1.0 / std::sqrt(mg.r[i]);
        for (std::size_t d = 0; d < model.rank; ++d) model.phi(i, d) = model.svd.u(i, d) * inv;
    }
    model.gamma = DenseMatrix(m.n_terms(), model.rank);
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
        const double inv = 1.0 / std::sqrt(mg.c[j]);
        for (std::size_t d = 0; d < model.rank; ++d) model.gamma(j, d) = model.svd.v(j, d) * inv;
    }
    return model;
}

DenseMatrix coordinates(const CaModel& model, Side side, CoordKind kind, std::size_t k) {
    check_k(k, model.rank);
    const DenseMatrix& base = side == Side::ROWS ? model.phi : model.gamma;
    DenseMatrix out(base.rows(), k);
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t d = 0; d < k; ++d) {
            const double scale = kind == CoordKind::PRINCIPAL ? model.svd.sigma[d] : 1.0;
            out(i, d) = base(i, d) * scale;
        }
    return out;
}

double chi2_distance(const DocTermMatrix& m, Side side, std::size_t a, std::size_t b) {
    const CaMargins mg = ca_margins(m);
    const std::size_t n = side == Side::ROWS ? m.n_docs() : m.n_terms();
    if (a >= n || b >= n) fail("RankOutOfRange", "profile index out of range");

    double acc = 0.0;
    if (side == Side::ROWS) {
        for (std::size_t j = 0; j < m.n_terms(); ++j) {
            const double pa = m.counts(a, j) / mg.total / mg.r[a];
            const double pb = m.counts(b, j) / mg.total / mg.r[b];
            acc += (pa - pb) * (pa - pb) / mg.c[j];
        }
    } else {
        for (std::size_t i = 0; i < m.n_docs(); ++i) {
            const double pa = m.counts(i, a) / mg.total / mg.c[a];
            const double pb = m.counts(i, b) / mg.total / mg.c[b];
            acc += (pa - pb) * (pa - pb) / mg.r[i];
        }
    }
    return std::sqrt(acc);
}

double transition_check(const CaModel& model) {
    const std::size_t nd = model.p.rows();
    const std::size_t nt = model.p.cols();
    double worst = 0.0;
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t d = 0; d < model.rank; ++d) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < nt; ++j) lhs += model.p(i, j) * model.gamma(j, d);
            lhs /= model.row_masses[i];
            worst = std::max(worst, std::abs(lhs - model.phi(i, d) * model.svd.sigma[d]));
        }
    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t d = 0; d < model.rank; ++d) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < nd; ++i) lhs += model.p(i, j) * model.phi(i, d);
            lhs /= model.col_masses[j];
            worst = std::max(worst, std::abs(lhs - model.gamma(j, d) * model.svd.sigma[d]));
        }
    return worst;
}

std::vector<double> project_row_ca(const CaModel& model, const std::vector<double>& q,
                                   std::size_t k) {
    check_k(k, model.rank);
    if (q.size() != model.term_strings.size())
        fail("DimensionMismatch", "query length does not match the fitted vocabulary");
    double total = 0.0;
    for (double x : q) total += x;
    if (total <= 0.0) fail("ZeroQuery", "query vector has no mass");

    std::vector<double> out(k, 0.0);
    for (std::size_t d = 0; d < k; ++d) {
        double acc = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) acc += (q[j] / total) * model.gamma(j, d);
        out[d] = acc;
    }
    return out;
}

}  // namespace dtmf
