#include "l3f/align/matching.hpp"

#include "l3f/error.hpp"

#include <cmath>

namespace l3f::align {

double l1_distance(const float* a, const float* b, int dim) {
    double acc = 0;
    for (int i = 0; i < dim; ++i) acc += std::abs(static_cast<double>(a[i]) - b[i]);
    return acc;
}

std::vector<MatchPair> match_crosscheck(const FeatureSet& gt, const FeatureSet& dark) {
    if (gt.size() == 0 || dark.size() == 0) return {};
    if (gt.dim != dark.dim) throw PreconditionError("descriptor dimensions differ");
    const std::size_t G = gt.size(), D = dark.size();
    std::vector<double> dist(G * D);
    for (std::size_t i = 0; i < G; ++i)
        for (std::size_t j = 0; j < D; ++j) dist[i * D + j] = l1_distance(gt.descriptor(i), dark.descriptor(j), gt.dim);

    std::vector<std::size_t> best_for_d(D, 0);
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t i = 1; i < G; ++i)
            if (dist[i * D + j] < dist[best_for_d[j] * D + j]) best_for_d[j] = i;

    std::vector<MatchPair> out;
    for (std::size_t i = 0; i < G; ++i) {
        std::size_t best = 0;
        double second = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j < D; ++j)
            if (dist[i * D + j] < dist[i * D + best]) best = j;
        for (std::size_t j = 0; j < D; ++j)
            if (j != best) second = std::min(second, dist[i * D + j]);
        if (best_for_d[best] == i) out.push_back({i, best, dist[i * D + best], second});
    }
    return out;
}

std::vector<MatchPair> ratio_test(const std::vector<MatchPair>& pairs, double ratio) {
    std::vector<MatchPair> out;
    for (const auto& p : pairs)
        if (std::isinf(p.second_distance) || p.distance < ratio * p.second_distance) out.push_back(p);
    return out;
}

} // namespace l3f::align
