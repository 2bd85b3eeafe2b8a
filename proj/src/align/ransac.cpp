#include "l3f/align/ransac.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace l3f::align {
namespace {

constexpr double kDegenerate = 1e-9;

double wrap_angle(double a) {
    while (a > std::numbers::pi) a -= 2 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
    return a;
}

std::size_t mark_inliers(const std::vector<Correspondence>& pairs, const RigidTransform& t, double threshold,
                         std::vector<bool>& mask) {
    mask.assign(pairs.size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Point2 p = t.apply(pairs[i].dark);
        if (std::hypot(p.x - pairs[i].gt.x, p.y - pairs[i].gt.y) <= threshold) {
            mask[i] = true;
            ++count;
        }
    }
    return count;
}

} // namespace

Point2 RigidTransform::apply(const Point2& p) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty};
}

RigidTransform rigid_from_two(const Correspondence& a, const Correspondence& b) {
    const double dx = b.dark.x - a.dark.x, dy = b.dark.y - a.dark.y;
    const double gx = b.gt.x - a.gt.x, gy = b.gt.y - a.gt.y;
    if (std::hypot(dx, dy) < kDegenerate || std::hypot(gx, gy) < kDegenerate)
        throw PreconditionError("degenerate sample: coincident points");
    RigidTransform t;
    t.theta = wrap_angle(std::atan2(gy, gx) - std::atan2(dy, dx));
    const double c = std::cos(t.theta), s = std::sin(t.theta);
    const double mdx = 0.5 * (a.dark.x + b.dark.x), mdy = 0.5 * (a.dark.y + b.dark.y);
    t.tx = 0.5 * (a.gt.x + b.gt.x) - (c * mdx - s * mdy);
    t.ty = 0.5 * (a.gt.y + b.gt.y) - (s * mdx + c * mdy);
    return t;
}

RigidTransform rigid_least_squares(const std::vector<Correspondence>& pairs, const std::vector<bool>& use) {
    double n = 0, gx = 0, gy = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!use[i]) continue;
        n += 1;
        gx += pairs[i].gt.x;
        gy += pairs[i].gt.y;
        dx += pairs[i].dark.x;
        dy += pairs[i].dark.y;
    }
    if (n < 2) throw PreconditionError("least-squares rigid fit needs at least 2 points");
    gx /= n;
    gy /= n;
    dx /= n;
    dy /= n;
    double sxx = 0, sxy = 0;  // sum of dot and cross products of centered points
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!use[i]) continue;
        const double ax = pairs[i].dark.x - dx, ay = pairs[i].dark.y - dy;
        const double bx = pairs[i].gt.x - gx, by = pairs[i].gt.y - gy;
        sxx += ax * bx + ay * by;
        sxy += ax * by - ay * bx;
    }
    RigidTransform t;
    t.theta = std::atan2(sxy, sxx);
    const double c = std::cos(t.theta), s = std::sin(t.theta);
    t.tx = gx - (c * dx - s * dy);
    t.ty = gy - (s * dx + c * dy);
    return t;
}

RansacResult ransac_rigid(const std::vector<Correspondence>& pairs, const RansacConfig& cfg, std::mt19937_64& rng) {
    if (pairs.size() < 2) throw PreconditionError("RANSAC needs at least 2 correspondences");
    if (!(cfg.confidence > 0 && cfg.confidence < 1)) throw PreconditionError("RANSAC confidence must be in (0, 1)");
    RansacResult best;
    std::vector<bool> mask;
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    double needed = static_cast<double>(cfg.max_iterations);
    int degenerate = 0;
    for (int it = 0; it < cfg.max_iterations && it < needed; ++it) {
        best.iterations = it + 1;
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        while (j == i) j = pick(rng);
        RigidTransform t;
        try {
            t = rigid_from_two(pairs[i], pairs[j]);
        } catch (const PreconditionError&) {
            ++degenerate;
            continue;
        }
        const std::size_t count = mark_inliers(pairs, t, cfg.inlier_px, mask);
        if (count > best.inlier_count) {
            best.inlier_count = count;
            best.transform = t;
            best.inliers = mask;
            const double w = static_cast<double>(count) / pairs.size();
            const double miss = 1.0 - w * w;
            needed = miss <= 0 ? 0 : std::ceil(std::log(1.0 - cfg.confidence) / std::log(miss));
        }
    }
    if (best.inlier_count == 0) {
        if (degenerate > 0) throw PreconditionError("RANSAC found only degenerate samples");
        return best;
    }
    // Refit on inliers, then once more on the inliers of the refined model.
    for (int round = 0; round < 2 && best.inlier_count >= 2; ++round) {
        const RigidTransform refined = rigid_least_squares(pairs, best.inliers);
        const std::size_t count = mark_inliers(pairs, refined, cfg.inlier_px, mask);
        if (count < 2) break;
        best.transform = refined;
        best.inliers = mask;
        best.inlier_count = count;
    }
    best.success = best.inlier_count >= cfg.min_inliers;
    return best;
}

} // namespace l3f::align
