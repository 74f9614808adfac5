#include "dtmf/ca.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "dtmf/error.hpp"
#include "test_util.hpp"
#include "toy_fixture.hpp"

using dtmf::CaModel;
using dtmf::CoordKind;
using dtmf::DenseMatrix;
using dtmf::DocTermMatrix;
using dtmf::Side;

namespace {

double principal_distance(const DenseMatrix& coords, std::size_t a, std::size_t b,
                          std::size_t k) {
    double acc = 0.0;
    for (std::size_t d = 0; d < k; ++d) {
        const double diff = coords(a, d) - coords(b, d);
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

DocTermMatrix scaled_toy(double factor) {
    DocTermMatrix m = toy::matrix();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m.counts(i, j) *= factor;
    return m;
}

}  // namespace

TEST_CASE("standardized residuals match the reference table") {
    const DenseMatrix r = dtmf::standardized_residuals(toy::matrix());
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(toy::cell(r, i, j) - toy::kStdResiduals[i][j]) < 0.0005);
}

TEST_CASE("one residual agrees with the hand computation") {
    // doc1 x lion: p = 2/41, r = 7/41, c = 7/41.
    const double p = 2.0 / 41.0, r = 7.0 / 41.0, c = 7.0 / 41.0;
    const double want = (p - r * c) / std::sqrt(r * c);
    const DenseMatrix res = dtmf::standardized_residuals(toy::matrix());
    CHECK(std::abs(toy::cell(res, 0, 0) - want) < 1e-12);
    CHECK(std::abs(want - 0.115) < 0.0005);
}

TEST_CASE("residuals are doubly centered under the margins") {
    const DocTermMatrix m = toy::matrix();
    const DenseMatrix r = dtmf::standardized_residuals(m);
    const dtmf::Margins mg = dtmf::margins(m);
    for (std::size_t i = 0; i < 6; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 6; ++j)
            acc += std::sqrt(mg.col_sums[j] / mg.grand_total) * r(i, j);
        CHECK(std::abs(acc) < 1e-10);
    }
    for (std::size_t j = 0; j < 6; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            acc += std::sqrt(mg.row_sums[i] / mg.grand_total) * r(i, j);
        CHECK(std::abs(acc) < 1e-10);
    }
}

TEST_CASE("singular values, inertias, and proportions match the reference table") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    REQUIRE(model.rank == 4);
    const auto props = dtmf::explained_proportions(model.svd);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(model.svd.sigma[i] - toy::kCaSigma[i]) < 0.0005);
        const double inertia = model.svd.sigma[i] * model.svd.sigma[i];
        CHECK(std::abs(inertia - toy::kCaInertia[i]) < 0.0005);
        CHECK(std::abs(props[i] - toy::kCaProportions[i]) < 0.0005);
    }
}

TEST_CASE("total inertia equals the chi-square statistic over the grand total") {
    const DocTermMatrix m = toy::matrix();
    const CaModel model = dtmf::fit_ca(m);
    const dtmf::Margins mg = dtmf::margins(m);

    double chi2 = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            const double expected = mg.row_sums[i] * mg.col_sums[j] / mg.grand_total;
            const double diff = m.counts(i, j) - expected;
            chi2 += diff * diff / expected;
        }
    CHECK(std::abs(model.total_inertia - chi2 / mg.grand_total) < 1e-12);
    // 0.509 is the sum of four per-dimension values each rounded to three
    // decimals, so it carries up to 0.002 of accumulated rounding.
    CHECK(std::abs(model.total_inertia - 0.509) < 0.002);
}

TEST_CASE("singular vectors match the reference columns up to sign") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    for (std::size_t d = 0; d < 2; ++d) {
        std::vector<double> u(6), v(6), ru(6), rv(6);
        for (std::size_t i = 0; i < 6; ++i) {
            u[i] = model.svd.u(i, d);
            ru[i] = toy::kCaU[i][d];
            // Reference vectors list terms in the original column order.
            v[i] = model.svd.v(toy::kRefToSorted[i], d);
            rv[i] = toy::kCaV[i][d];
        }
        CHECK(toy::column_diff_up_to_sign(u, ru) < 0.0006);
        CHECK(toy::column_diff_up_to_sign(v, rv) < 0.0006);
    }
}

TEST_CASE("standard coordinates are orthonormal under the masses") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    const DenseMatrix phi = dtmf::coordinates(model, Side::ROWS, CoordKind::STANDARD, 4);
    const DenseMatrix gamma = dtmf::coordinates(model, Side::COLS, CoordKind::STANDARD, 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            double dr = 0.0, dc = 0.0;
            for (std::size_t i = 0; i < 6; ++i) dr += model.row_masses[i] * phi(i, a) * phi(i, b);
            for (std::size_t j = 0; j < 6; ++j)
                dc += model.col_masses[j] * gamma(j, a) * gamma(j, b);
            const double target = a == b ? 1.0 : 0.0;
            CHECK(std::abs(dr - target) < 1e-9);
            CHECK(std::abs(dc - target) < 1e-9);
        }
}

TEST_CASE("fit is invariant to rescaling the table") {
    const CaModel base = dtmf::fit_ca(toy::matrix());
    const CaModel scaled = dtmf::fit_ca(scaled_toy(3.0));
    REQUIRE(scaled.rank == base.rank);
    CHECK(std::abs(scaled.total_inertia - base.total_inertia) < 1e-12);
    for (std::size_t d = 0; d < base.rank; ++d)
        CHECK(std::abs(scaled.svd.sigma[d] - base.svd.sigma[d]) < 1e-12);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t d = 0; d < base.rank; ++d)
            CHECK(std::abs(scaled.phi(i, d) - base.phi(i, d)) < 1e-9);
}

TEST_CASE("an independent table has no inertia") {
    DocTermMatrix m;
    m.docs = {"d1", "d2"};
    m.terms = {"a", "b"};
    m.counts = DenseMatrix(2, 2);
    m.counts(0, 0) = 1;
    m.counts(0, 1) = 2;
    m.counts(1, 0) = 2;
    m.counts(1, 1) = 4;

    const DenseMatrix r = dtmf::standardized_residuals(m);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(r(i, j)) < 1e-14);

    const CaModel model = dtmf::fit_ca(m);
    CHECK(model.total_inertia < 1e-12);
    CHECK(model.rank == 0);
}

TEST_CASE("chi-square distances are symmetric and zero on the diagonal") {
    const DocTermMatrix m = toy::matrix();
    for (std::size_t a = 0; a < 6; ++a) {
        CHECK(dtmf::chi2_distance(m, Side::ROWS, a, a) == 0.0);
        CHECK(dtmf::chi2_distance(m, Side::COLS, a, a) == 0.0);
        for (std::size_t b = 0; b < 6; ++b) {
            CHECK(dtmf::chi2_distance(m, Side::ROWS, a, b) ==
                  dtmf::chi2_distance(m, Side::ROWS, b, a));
            CHECK(dtmf::chi2_distance(m, Side::COLS, a, b) ==
                  dtmf::chi2_distance(m, Side::COLS, b, a));
        }
    }
}

TEST_CASE("full-rank principal coordinates reproduce chi-square distances") {
    const DocTermMatrix m = toy::matrix();
    const CaModel model = dtmf::fit_ca(m);
    const DenseMatrix rows = dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 4);
    const DenseMatrix cols = dtmf::coordinates(model, Side::COLS, CoordKind::PRINCIPAL, 4);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) {
            CHECK(std::abs(principal_distance(rows, a, b, 4) -
                           dtmf::chi2_distance(m, Side::ROWS, a, b)) < 1e-9);
            CHECK(std::abs(principal_distance(cols, a, b, 4) -
                           dtmf::chi2_distance(m, Side::COLS, a, b)) < 1e-9);
        }
}

TEST_CASE("one chi-square distance agrees with the direct formula") {
    const DocTermMatrix m = toy::matrix();
    const dtmf::Margins mg = dtmf::margins(m);
    double want = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
        const double pa = m.counts(4, j) / mg.grand_total / (mg.row_sums[4] / mg.grand_total);
        const double pb = m.counts(5, j) / mg.grand_total / (mg.row_sums[5] / mg.grand_total);
        const double diff = pa - pb;
        want += diff * diff / (mg.col_sums[j] / mg.grand_total);
    }
    CHECK(std::abs(dtmf::chi2_distance(m, Side::ROWS, 4, 5) - std::sqrt(want)) < 1e-12);
}

TEST_CASE("transition identities hold on the worked table and random tables") {
    CHECK(dtmf::transition_check(dtmf::fit_ca(toy::matrix())) < 1e-9);

    testutil::Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        DocTermMatrix m;
        m.counts = testutil::random_count_matrix(rng, 8, 12, 5);
        for (std::size_t i = 0; i < 8; ++i) {
            m.docs.push_back("d" + std::to_string(i));
            m.counts(i, rng.integer(12)) += 1.0;
        }
        for (std::size_t j = 0; j < 12; ++j) {
            m.terms.push_back("t" + std::to_string(j));
            m.counts(rng.integer(8), j) += 1.0;
        }
        CHECK(dtmf::transition_check(dtmf::fit_ca(m)) < 1e-9);
    }
}

TEST_CASE("projecting a training row reproduces its principal coordinates") {
    const DocTermMatrix m = toy::matrix();
    const CaModel model = dtmf::fit_ca(m);
    const DenseMatrix rows = dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<double> q(6);
        for (std::size_t j = 0; j < 6; ++j) q[j] = m.counts(i, j);
        const auto proj = dtmf::project_row_ca(model, q, 4);
        REQUIRE(proj.size() == 4);
        for (std::size_t d = 0; d < 4; ++d) CHECK(std::abs(proj[d] - rows(i, d)) < 1e-9);
    }
}

TEST_CASE("the average profile projects to the origin") {
    const DocTermMatrix m = toy::matrix();
    const CaModel model = dtmf::fit_ca(m);
    const dtmf::Margins mg = dtmf::margins(m);
    const auto proj = dtmf::project_row_ca(model, mg.col_sums, 4);
    for (double x : proj) CHECK(std::abs(x) < 1e-9);
}

TEST_CASE("a one-hot profile lands on the term's standard coordinates") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    const DenseMatrix gamma = dtmf::coordinates(model, Side::COLS, CoordKind::STANDARD, 4);
    std::vector<double> q(6, 0.0);
    q[0] = 7.0;  // all mass on cheetah; scaling must not matter
    const auto proj = dtmf::project_row_ca(model, q, 4);
    for (std::size_t d = 0; d < 4; ++d) CHECK(std::abs(proj[d] - gamma(0, d)) < 1e-9);
}

TEST_CASE("scaling a query leaves its projection unchanged") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    const std::vector<double> q = {1, 0, 2, 3, 0, 1};
    std::vector<double> q9(6);
    for (std::size_t j = 0; j < 6; ++j) q9[j] = 9.0 * q[j];
    const auto a = dtmf::project_row_ca(model, q, 3);
    const auto b = dtmf::project_row_ca(model, q9, 3);
    for (std::size_t d = 0; d < 3; ++d) CHECK(std::abs(a[d] - b[d]) < 1e-12);
}

TEST_CASE("the mixed document sits between the pure groups on the first axis") {
    const CaModel model = dtmf::fit_ca(toy::matrix());
    const DenseMatrix rows = dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 1);
    // Pure cat documents on one side, cars on the other, doc4 in between.
    const double cats_max = std::max({rows(0, 0), rows(1, 0), rows(2, 0)});
    const double cats_min = std::min({rows(0, 0), rows(1, 0), rows(2, 0)});
    const double cars_max = std::max(rows(4, 0), rows(5, 0));
    const double cars_min = std::min(rows(4, 0), rows(5, 0));
    const bool cats_below = cats_max < rows(3, 0) && rows(3, 0) < cars_min;
    const bool cars_below = cars_max < rows(3, 0) && rows(3, 0) < cats_min;
    CHECK((cats_below || cars_below));
}

TEST_CASE("row principal coordinates are mass-weighted averages of column standards") {
    // The transition formula in coordinate form: each row's principal position
    // is the barycenter of column standard positions weighted by its profile.
    const DocTermMatrix m = toy::matrix();
    const CaModel model = dtmf::fit_ca(m);
    const DenseMatrix rows = dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 4);
    const DenseMatrix gamma = dtmf::coordinates(model, Side::COLS, CoordKind::STANDARD, 4);
    const dtmf::Margins mg = dtmf::margins(m);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t d = 0; d < 4; ++d) {
            double acc = 0.0;
            for (std::size_t j = 0; j < 6; ++j)
                acc += m.counts(i, j) / mg.row_sums[i] * gamma(j, d);
            CHECK(std::abs(acc - rows(i, d)) < 1e-9);
        }
}

TEST_CASE("degenerate inputs are refused") {
    DocTermMatrix zero_col = toy::matrix();
    for (std::size_t i = 0; i < 6; ++i) zero_col.counts(i, 1) = 0.0;
    try {
        (void)dtmf::fit_ca(zero_col);
        CHECK(false);
    } catch (const dtmf::Error& e) {
        CHECK(e.code() == "ZeroMargin");
    }

    const CaModel model = dtmf::fit_ca(toy::matrix());
    CHECK_THROWS_AS((void)dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 0),
                    dtmf::Error);
    CHECK_THROWS_AS((void)dtmf::coordinates(model, Side::ROWS, CoordKind::PRINCIPAL, 5),
                    dtmf::Error);
    CHECK_THROWS_AS((void)dtmf::project_row_ca(model, std::vector<double>(6, 0.0), 2),
                    dtmf::Error);
    CHECK_THROWS_AS((void)dtmf::project_row_ca(model, {1, 1, 1, 1, 1, 1}, 5), dtmf::Error);
}
