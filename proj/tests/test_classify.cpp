#include "dtmf/classify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dtmf/error.hpp"
#include "test_util.hpp"

using dtmf::DenseMatrix;
using dtmf::GroupDistanceMethod;
using dtmf::LabeledEmbedding;

namespace {

DenseMatrix points(const std::vector<std::vector<double>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

constexpr GroupDistanceMethod kAll[] = {
    GroupDistanceMethod::CENTROID,
    GroupDistanceMethod::AVERAGE,
    GroupDistanceMethod::SINGLE,
    GroupDistanceMethod::COMPLETE,
};

}  // namespace

TEST_CASE("method names round trip") {
    for (GroupDistanceMethod m : kAll)
        CHECK(dtmf::method_from_string(dtmf::to_string(m)) == m);
    CHECK_THROWS_AS((void)dtmf::method_from_string("median"), dtmf::Error);
}

TEST_CASE("all methods agree on a singleton group") {
    const DenseMatrix g = points({{3.0, 4.0}});
    const std::vector<double> origin = {0.0, 0.0};
    for (GroupDistanceMethod m : kAll) CHECK(dtmf::group_distance(origin, g, m) == 5.0);
}

TEST_CASE("hand-checked distances to a symmetric pair") {
    // Group members at (1,0) and (-1,0); query at the origin. The centroid
    // sits exactly on the query while every member is one unit away.
    const DenseMatrix g = points({{1.0, 0.0}, {-1.0, 0.0}});
    const std::vector<double> q = {0.0, 0.0};
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::CENTROID) == 0.0);
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::AVERAGE) == 1.0);
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::SINGLE) == 1.0);
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::COMPLETE) == 1.0);
}

TEST_CASE("hand-checked distances to an asymmetric pair") {
    const DenseMatrix g = points({{3.0, 4.0}, {0.0, 2.0}});
    const std::vector<double> q = {0.0, 0.0};
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::SINGLE) == 2.0);
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::COMPLETE) == 5.0);
    CHECK(dtmf::group_distance(q, g, GroupDistanceMethod::AVERAGE) == 3.5);
    // Centroid (1.5, 3): distance sqrt(2.25 + 9).
    CHECK(std::abs(dtmf::group_distance(q, g, GroupDistanceMethod::CENTROID) -
                   std::sqrt(11.25)) < 1e-15);
}

TEST_CASE("method orderings hold on random clouds") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.integer(6), k = 1 + rng.integer(4);
        const DenseMatrix g = testutil::random_matrix(rng, n, k, -3.0, 3.0);
        std::vector<double> q(k);
        for (std::size_t d = 0; d < k; ++d) q[d] = rng.uniform(-3.0, 3.0);

        const double single = dtmf::group_distance(q, g, GroupDistanceMethod::SINGLE);
        const double average = dtmf::group_distance(q, g, GroupDistanceMethod::AVERAGE);
        const double complete = dtmf::group_distance(q, g, GroupDistanceMethod::COMPLETE);
        const double centroid = dtmf::group_distance(q, g, GroupDistanceMethod::CENTROID);
        CHECK(single <= average + 1e-12);
        CHECK(average <= complete + 1e-12);
        // Distance to the mean never exceeds the mean distance (convexity).
        CHECK(centroid <= average + 1e-12);
    }
}

TEST_CASE("member order within a group does not matter") {
    testutil::Rng rng(37);
    const DenseMatrix g = testutil::random_matrix(rng, 5, 3, -2.0, 2.0);
    DenseMatrix reversed(5, 3);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j) reversed(i, j) = g(4 - i, j);
    const std::vector<double> q = {0.3, -0.7, 1.1};
    for (GroupDistanceMethod m : kAll)
        CHECK(std::abs(dtmf::group_distance(q, g, m) - dtmf::group_distance(q, reversed, m)) <
              1e-12);
}

TEST_CASE("classification reports every group and picks the nearest") {
    LabeledEmbedding emb;
    emb.coords = points({{0.0, 0.0}, {0.2, 0.0}, {5.0, 5.0}, {5.2, 5.0}, {9.0, 0.0}});
    emb.labels = {"near", "near", "mid", "mid", "far"};
    const std::vector<double> q = {0.1, 0.0};

    const dtmf::Verdict v = dtmf::classify(q, emb, GroupDistanceMethod::CENTROID);
    CHECK(v.label == "near");
    REQUIRE(v.distances.size() == 3);
    CHECK(v.distances[0].first == "far");
    CHECK(v.distances[1].first == "mid");
    CHECK(v.distances[2].first == "near");
    CHECK(v.distances[2].second < v.distances[1].second);
    CHECK(v.distances[1].second < v.distances[0].second);
    CHECK(std::abs(v.distances[0].second - 8.9) < 1e-12);
}

TEST_CASE("exact ties resolve to the alphabetically first label") {
    LabeledEmbedding emb;
    emb.coords = points({{1.0, 0.0}, {-1.0, 0.0}});
    emb.labels = {"zeta", "alpha"};
    const std::vector<double> q = {0.0, 0.0};
    for (GroupDistanceMethod m : kAll) {
        const dtmf::Verdict v = dtmf::classify(q, emb, m);
        CHECK(v.label == "alpha");
    }

    // Same tie presented in the opposite storage order.
    LabeledEmbedding swapped;
    swapped.coords = points({{-1.0, 0.0}, {1.0, 0.0}});
    swapped.labels = {"alpha", "zeta"};
    for (GroupDistanceMethod m : kAll)
        CHECK(dtmf::classify(q, swapped, m).label == "alpha");
}

TEST_CASE("degenerate inputs are refused") {
    const DenseMatrix empty(0, 2);
    const std::vector<double> q = {0.0, 0.0};
    try {
        (void)dtmf::group_distance(q, empty, GroupDistanceMethod::CENTROID);
        CHECK(false);
    } catch (const dtmf::Error& e) {
        CHECK(e.code() == "EmptyGroup");
    }

    const DenseMatrix g = points({{1.0, 2.0, 3.0}});
    CHECK_THROWS_AS((void)dtmf::group_distance(q, g, GroupDistanceMethod::CENTROID),
                    dtmf::Error);

    LabeledEmbedding emb;
    emb.coords = points({{1.0, 0.0}});
    emb.labels = {};
    CHECK_THROWS_AS((void)dtmf::classify(q, emb, GroupDistanceMethod::CENTROID), dtmf::Error);

    LabeledEmbedding unlabeled;
    unlabeled.coords = points({{1.0, 0.0}, {2.0, 0.0}});
    unlabeled.labels = {"a", ""};
    CHECK_THROWS_AS((void)dtmf::classify(q, unlabeled, GroupDistanceMethod::CENTROID),
                    dtmf::Error);
}
