#pragma once

#include <span>
#include <string>
#include <vector>

#include "dtmf/matrix.hpp"

namespace dtmf {

enum class GroupDistanceMethod { CENTROID, AVERAGE, SINGLE, COMPLETE };

std::string to_string(GroupDistanceMethod m);
GroupDistanceMethod method_from_string(const std::string& s);

struct LabeledEmbedding {
    DenseMatrix coords;               // docs x k
    std::vector<std::string> labels;  // one per row
};

double group_distance(std::span<const double> point, const DenseMatrix& group,
                      GroupDistanceMethod method);

struct Verdict {
    std::string label;
    std::vector<std::pair<std::string, double>> distances;  // sorted by label
};

// Nearest group; ties go to the lexicographically smallest label.
Verdict classify(std::span<const double> point, const LabeledEmbedding& emb,
                 GroupDistanceMethod method);

}  // namespace dtmf
