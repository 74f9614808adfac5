#include "dtmf/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dtmf/error.hpp"

namespace dtmf {

std::string to_string(GroupDistanceMethod m) {
    switch (m) {
        case GroupDistanceMethod::CENTROID: return "centroid";
        case GroupDistanceMethod::AVERAGE: return "average";
        case GroupDistanceMethod::SINGLE: return "single";
        case GroupDistanceMethod::COMPLETE: return "complete";
    }
    fail("BadFormat", "unknown distance method");
}

GroupDistanceMethod method_from_string(const std::string& s) {
    if (s == "centroid") return GroupDistanceMethod::CENTROID;
    if (s == "average") return GroupDistanceMethod::AVERAGE;
    if (s == "single") return GroupDistanceMethod::SINGLE;
    if (s == "complete") return GroupDistanceMethod::COMPLETE;
    fail("BadFormat", "unknown distance method \"" + s + "\"");
}

double group_distance(std::span<const double> point, const DenseMatrix& group,
                      GroupDistanceMethod method) {
    if (group.rows() == 0) fail("EmptyGroup", "group has no members");
    if (group.cols() != point.size())
        fail("DimensionMismatch", "point and group dimensions differ");

    switch (method) {
        case GroupDistanceMethod::CENTROID: {
            std::vector<double> mean(group.cols(), 0.0);
            for (std::size_t i = 0; i < group.rows(); ++i)
                for (std::size_t j = 0; j < group.cols(); ++j) mean[j] += group(i, j);
            for (double& x : mean) x /= static_cast<double>(group.rows());
            return euclidean_distance(point, mean);
        }
        case GroupDistanceMethod::AVERAGE: {
            double acc = 0.0;
            for (std::size_t i = 0; i < group.rows(); ++i)
                acc += euclidean_distance(point, group.row(i));
            return acc / static_cast<double>(group.rows());
        }
        case GroupDistanceMethod::SINGLE: {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < group.rows(); ++i)
                best = std::min(best, euclidean_distance(point, group.row(i)));
            return best;
        }
        case GroupDistanceMethod::COMPLETE: {
            double worst = 0.0;
            for (std::size_t i = 0; i < group.rows(); ++i)
                worst = std::max(worst, euclidean_distance(point, group.row(i)));
            return worst;
        }
    }
    fail("BadFormat", "unknown distance method");
}

Verdict classify(std::span<const double> point, const LabeledEmbedding& emb,
                 GroupDistanceMethod method) {
    if (emb.labels.size() != emb.coords.rows())
        fail("DimensionMismatch", "one label per embedded document required");
    if (emb.labels.empty()) fail("MissingLabels", "embedding has no labeled documents");
    for (const std::string& label : emb.labels)
        if (label.empty()) fail("MissingLabels", "embedding contains an unlabeled document");

    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < emb.labels.size(); ++i) by_label[emb.labels[i]].push_back(i);

    Verdict v;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [label, rows] : by_label) {
        DenseMatrix group(rows.size(), emb.coords.cols());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < emb.coords.cols(); ++j)
                group(r, j) = emb.coords(rows[r], j);
        const double d = group_distance(point, group, method);
        v.distances.emplace_back(label, d);
        if (d < best) {  // map iteration is sorted, so first-wins breaks ties
            best = d;
            v.label = label;
        }
    }
    return v;
}

}  // namespace dtmf
