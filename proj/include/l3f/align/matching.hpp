#pragma once

#include "l3f/align/features.hpp"

#include <limits>
#include <vector>

namespace l3f::align {

struct MatchPair {
    std::size_t g = 0;  // index into the GT set
    std::size_t d = 0;  // index into the dark set
    double distance = 0;
    // Next-closest dark descriptor to g; infinity when D holds one descriptor.
    double second_distance = std::numeric_limits<double>::infinity();
};

double l1_distance(const float* a, const float* b, int dim);

// Mutual nearest neighbors under L1, ordered by g.
std::vector<MatchPair> match_crosscheck(const FeatureSet& gt, const FeatureSet& dark);

// Keeps pairs with distance < ratio * second_distance; pairs without a second
// candidate are kept.
std::vector<MatchPair> ratio_test(const std::vector<MatchPair>& pairs, double ratio = 0.70);

} // namespace l3f::align
