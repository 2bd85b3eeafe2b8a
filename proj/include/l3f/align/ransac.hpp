#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace l3f::align {

struct Point2 {
    double x = 0;
    double y = 0;
};

// GT = R(theta) * dark + (tx, ty).
struct RigidTransform {
    double theta = 0;
    double tx = 0;
    double ty = 0;

    Point2 apply(const Point2& p) const;
};

struct Correspondence {
    Point2 gt;
    Point2 dark;
};

struct RansacConfig {
    double confidence = 0.99;
    double inlier_px = 1.0;
    int max_iterations = 10000;
    // Fewer inliers than this marks the estimate as failed.
    std::size_t min_inliers = 5;
};

struct RansacResult {
    RigidTransform transform;
    std::vector<bool> inliers;
    std::size_t inlier_count = 0;
    int iterations = 0;
    bool success = false;
};

// Exact model through two correspondences; throws PreconditionError when
// either pair of points coincides.
RigidTransform rigid_from_two(const Correspondence& a, const Correspondence& b);

// Least-squares rotation and translation over the selected correspondences.
RigidTransform rigid_least_squares(const std::vector<Correspondence>& pairs, const std::vector<bool>& use);

// Needs >= 2 correspondences.
RansacResult ransac_rigid(const std::vector<Correspondence>& pairs, const RansacConfig& config, std::mt19937_64& rng);

} // namespace l3f::align
